//! Independent commutative-case oracle. For a commutative algebra the
//! classical localization at a maximal ideal `m` is computable without
//! any endomorphism rings: an Artinian commutative ring splits into local
//! factors `A_m = e·A` for primitive idempotents `e`, found by lifting
//! the residue idempotents of `A/J` through the nilradical. Comparing
//! `A_M` (built from the simple module with annihilator `m`) against
//! `A_m` cross-checks the endomorphism-side construction: the two agree
//! exactly when `A_m` is reduced, and the defect is the nilpotent part
//! that `A_M` cannot see.

use std::sync::Arc;

use crate::algebra::{check_algebra_hom, quotient_algebra, AlgebraPresentation, IdealBasis};
use crate::localize::{localize, universal_map, LocalizeError};
use crate::module::{radical, simples, ModuleRep};
use crate::session::Session;
use crate::subspace::{LinMap, Subspace};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the algebra is not commutative")]
    NotCommutative,
    #[error("the quotient by the given ideal is not a field")]
    NotMaximal,
    #[error("no maximal ideal matches the module's annihilator")]
    NoMatchingIdeal,
    #[error("the target map does not kill the kernel of the localization map")]
    PullbackMismatch,
}

/// One maximal ideal of a commutative algebra with its local data.
#[derive(Debug, Clone)]
pub struct MaximalIdealData {
    pub ideal: IdealBasis,
    /// Dimension of the residue field `A/m`.
    pub residue_dim: usize,
    /// The primitive idempotent `e` with `A_m = e·A`, in `A` coordinates.
    pub idempotent: Vec<u64>,
}

fn vec_add(f: crate::field::PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

fn vec_scale(f: crate::field::PrimeField, a: &[u64], c: u64) -> Vec<u64> {
    a.iter().map(|&x| f.mul(x, c)).collect()
}

/// All nonzero coordinate tuples of the given length over `F_p`; only
/// used when `p^dim` is small.
fn nonzero_tuples(p: u64, dim: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut odo = vec![0u64; dim];
    loop {
        let mut pos = 0;
        loop {
            if pos == dim {
                return out;
            }
            odo[pos] += 1;
            if odo[pos] < p {
                break;
            }
            odo[pos] = 0;
            pos += 1;
        }
        out.push(odo.clone());
    }
}

/// Whether every nonzero element of the presentation is invertible;
/// `None` when the ring is too large to enumerate under the cap.
fn exhaustively_a_field(pres: &AlgebraPresentation, cap: u64) -> Option<bool> {
    let p = pres.field().modulus();
    let total = (p as u128).checked_pow(pres.dim() as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return None;
    }
    Some(nonzero_tuples(p, pres.dim()).iter().all(|v| pres.try_inverse(v).is_some()))
}

/// Newton-lift an idempotent-mod-nilpotents to an exact idempotent via
/// `e ← 3e² − 2e³`, which reduces to `e ← e²` in characteristic 2 and
/// `e ← e³` in characteristic 3. Converges quadratically because the
/// discrepancy `e − e²` stays nilpotent and squares each round.
pub fn lift_idempotent(alg: &AlgebraPresentation, e0: &[u64]) -> Vec<u64> {
    let f = alg.field();
    let mut e = e0.to_vec();
    for _ in 0..=alg.dim() + 2 {
        let e2 = alg.mul(&e, &e);
        if e2 == e {
            return e;
        }
        let e3 = alg.mul(&e2, &e);
        e = vec_add(f, &vec_scale(f, &e2, f.reduce(3)), &vec_scale(f, &e3, f.neg(f.reduce(2))));
    }
    panic!("idempotent lifting failed to converge; the input was not idempotent mod nilpotents");
}

/// All maximal ideals of a commutative algebra: annihilators of the
/// distinct simples, each paired with its primitive idempotent. The list
/// is sorted by the canonical ideal basis, so it does not depend on the
/// session's chop order.
pub fn maximal_ideals(
    algebra: &Arc<AlgebraPresentation>,
    session: &mut Session,
) -> Result<Vec<MaximalIdealData>, OracleError> {
    if !algebra.is_commutative() {
        return Err(OracleError::NotCommutative);
    }
    let f = algebra.field();
    let n = algebra.dim();
    let simple_list = simples(algebra, session);
    let mut ideals: Vec<IdealBasis> = simple_list.iter().map(|s| s.annihilator()).collect();
    ideals.sort_by(|a, b| a.space().basis().cmp(b.space().basis()));

    let quotients: Vec<_> = ideals
        .iter()
        .map(|m| quotient_algebra(algebra, m).expect("a maximal ideal is proper"))
        .collect();
    for qd in &quotients {
        if let Some(false) = exhaustively_a_field(&qd.algebra, 4096) {
            return Err(OracleError::NotMaximal);
        }
    }

    // CRT: A/J ≅ ∏ A/m_i, so the tuple (0, …, 1, …, 0) has a preimage,
    // idempotent modulo J; the concatenated projections realize the map.
    let block_dims: Vec<usize> = quotients.iter().map(|qd| qd.algebra.dim()).collect();
    let total: usize = block_dims.iter().sum();
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row = Vec::with_capacity(total);
            for qd in &quotients {
                row.extend(qd.projection.apply(&algebra.basis_vec(i)));
            }
            row
        })
        .collect();
    let phi = LinMap::from_rows_with_shape(f, n, total, &rows);

    let mut out = Vec::with_capacity(ideals.len());
    let mut sum = vec![0u64; n];
    for (k, (ideal, qd)) in ideals.iter().zip(&quotients).enumerate() {
        let mut target = vec![0u64; total];
        let offset: usize = block_dims[..k].iter().sum();
        for (t, &u) in qd.algebra.unit().iter().enumerate() {
            target[offset + t] = u;
        }
        let rough = phi
            .preimage(&target)
            .expect("the combined projection is surjective by CRT");
        let e = lift_idempotent(algebra, &rough);
        assert_eq!(alg_sq(algebra, &e), e);
        sum = vec_add(f, &sum, &e);
        out.push(MaximalIdealData {
            ideal: ideal.clone(),
            residue_dim: qd.algebra.dim(),
            idempotent: e,
        });
    }
    // pairwise products of distinct lifts are idempotent and nilpotent,
    // hence zero; the sum is then an idempotent congruent to 1 mod J
    for i in 0..out.len() {
        for j in 0..out.len() {
            if i != j {
                let prod = algebra.mul(&out[i].idempotent, &out[j].idempotent);
                assert!(prod.iter().all(|&x| x == 0), "lifted idempotents must be orthogonal");
            }
        }
    }
    assert_eq!(sum, algebra.unit(), "lifted idempotents must sum to 1");
    Ok(out)
}

fn alg_sq(alg: &AlgebraPresentation, a: &[u64]) -> Vec<u64> {
    alg.mul(a, a)
}

/// The classical local factor `A_m = e·A`, presented on the canonical
/// basis of the subspace `e·A ⊆ A`.
#[derive(Debug, Clone)]
pub struct LocalRing {
    pub algebra: AlgebraPresentation,
    /// The localization map `A → A_m`, `a ↦ e·a`.
    pub f_m: LinMap,
    /// Linear section `A_m → A` embedding the subspace basis.
    pub section: LinMap,
    pub idempotent: Vec<u64>,
    /// The unique maximal ideal `e·m` of the local factor.
    pub maximal: IdealBasis,
    /// Whether every element outside `e·m` was exhaustively checked to
    /// be a unit (skipped above the enumeration cap).
    pub local_verified: Option<bool>,
}

/// Build `A_m = e·A` and verify it is local with maximal ideal `e·m`.
pub fn localize_at_max(
    algebra: &AlgebraPresentation,
    md: &MaximalIdealData,
) -> Result<LocalRing, OracleError> {
    if !algebra.is_commutative() {
        return Err(OracleError::NotCommutative);
    }
    let f = algebra.field();
    let n = algebra.dim();
    let e = &md.idempotent;
    assert_eq!(alg_sq(algebra, e), *e, "localization needs an exact idempotent");

    let spanning: Vec<Vec<u64>> = (0..n).map(|i| algebra.mul(e, &algebra.basis_vec(i))).collect();
    let sub = Subspace::from_spanning(f, n, &spanning);
    let d = sub.dim();
    let coords = |v: &[u64]| sub.coords_of(v).expect("product of e·A elements stays in e·A");

    let mut table = vec![vec![vec![0u64; d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            table[i][j] = coords(&algebra.mul(&sub.basis()[i], &sub.basis()[j]));
        }
    }
    let names = (0..d).map(|i| format!("l{i}")).collect();
    let pres = AlgebraPresentation::new(
        f,
        format!("{}_loc", algebra.name()),
        names,
        coords(e),
        &table,
    );
    pres.validate().expect("e·A is closed under the ring operations");

    let f_m_rows: Vec<Vec<u64>> = (0..n).map(|i| coords(&spanning[i])).collect();
    let f_m = LinMap::from_rows_with_shape(f, n, d, &f_m_rows);
    check_algebra_hom(algebra, &pres, &f_m).expect("a ↦ e·a is a homomorphism since e² = e");
    assert!(f_m.is_surjective());
    let section = LinMap::from_rows_with_shape(f, d, n, sub.basis());

    let rad_span: Vec<Vec<u64>> = md
        .ideal
        .space()
        .basis()
        .iter()
        .map(|v| coords(&algebra.mul(e, v)))
        .collect();
    let maximal = IdealBasis::generated_by(&pres, &rad_span);
    assert_eq!(
        pres.dim() - maximal.dim(),
        md.residue_dim,
        "the residue field of e·A must match A/m"
    );

    let p = f.modulus();
    let local_verified = if (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX) <= 4096 {
        let ok = nonzero_tuples(p, d)
            .iter()
            .all(|v| maximal.contains(v) || pres.try_inverse(v).is_some());
        Some(ok)
    } else {
        None
    };
    if local_verified == Some(false) {
        return Err(OracleError::NotMaximal);
    }

    Ok(LocalRing {
        algebra: pres,
        f_m,
        section,
        idempotent: e.clone(),
        maximal,
        local_verified,
    })
}

/// Outcome of the comparison between `A_M` and the classical `A_m`.
#[derive(Debug, Clone)]
pub enum OracleOutcome {
    /// The universal map `A_M → A_m` is a ring isomorphism.
    Iso { dim: usize, map: LinMap },
    /// The universal property fails; the recorded defect data shows why
    /// (a non-reduced local factor has nilpotents invisible to `A_M`).
    Mismatch {
        dim_am: usize,
        dim_classical: usize,
        nilradical_dim: usize,
        error: LocalizeError,
    },
}

#[derive(Debug, Clone)]
pub struct OracleCompare {
    pub md: MaximalIdealData,
    pub local: LocalRing,
    pub dim_am: usize,
    pub outcome: OracleOutcome,
}

/// Compare `A_M` for a simple module `M` against `A_m` at the maximal
/// ideal `m = ann(M)`, using the universal property with `κ = f_m`.
pub fn oracle_compare(
    algebra: &Arc<AlgebraPresentation>,
    module: &ModuleRep,
    session: &mut Session,
) -> Result<OracleCompare, OracleError> {
    if !algebra.is_commutative() {
        return Err(OracleError::NotCommutative);
    }
    let mds = maximal_ideals(algebra, session)?;
    let ann = module.annihilator();
    let md = mds
        .into_iter()
        .find(|md| md.ideal.space() == ann.space())
        .ok_or(OracleError::NoMatchingIdeal)?;
    let local = localize_at_max(algebra, &md)?;
    let lfr = localize(algebra, std::slice::from_ref(module), session)
        .expect("a simple module over a commutative algebra localizes");
    let dim_am = lfr.dim();

    let outcome = match universal_map(&lfr, &local.algebra, &local.f_m) {
        Ok(um) => {
            assert!(
                um.rho.is_bijective(),
                "a successful universal map onto a reduced local factor is an isomorphism"
            );
            OracleOutcome::Iso { dim: dim_am, map: um.rho }
        }
        Err(error) => OracleOutcome::Mismatch {
            dim_am,
            dim_classical: local.algebra.dim(),
            nilradical_dim: radical(algebra, session).dim(),
            error,
        },
    };
    Ok(OracleCompare { md, local, dim_am, outcome })
}

/// For each target `(B, h)` with `h: A → B` a homomorphism, try to factor
/// `h` through `f_m: A → A_m`. The factorization `ξ` exists iff `h` kills
/// `ker f_m = (1−e)A`, and is then unique because `f_m` is surjective.
pub fn representability_probe(
    algebra: &AlgebraPresentation,
    local: &LocalRing,
    targets: &[(AlgebraPresentation, LinMap)],
) -> Vec<Result<LinMap, OracleError>> {
    targets
        .iter()
        .map(|(b, h)| {
            check_algebra_hom(algebra, b, h).expect("probe targets must be homomorphisms");
            for v in local.f_m.kernel().basis() {
                if h.apply(v).iter().any(|&x| x != 0) {
                    return Err(OracleError::PullbackMismatch);
                }
            }
            let xi = local.section.compose(h);
            check_algebra_hom(&local.algebra, b, &xi)
                .expect("the factorization through e·A is a homomorphism");
            assert_eq!(local.f_m.compose(&xi), *h, "ξ must factor h through f_m");
            Ok(xi)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::mat::Mat;
    use crate::poly::Poly;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn f2xf2() -> Arc<AlgebraPresentation> {
        let f = AlgebraPresentation::prime_field_algebra(f2());
        Arc::new(f.direct_product(&f))
    }

    fn dual_numbers() -> Arc<AlgebraPresentation> {
        Arc::new(AlgebraPresentation::polynomial_quotient(
            f2(),
            &Poly::from_coeffs(f2(), vec![0, 0, 1]),
            "f2x2",
        ))
    }

    #[test]
    fn lift_idempotent_examples() {
        // 1 + x is idempotent mod (x) in F_2[x]/(x⁴) and lifts to 1
        let a = AlgebraPresentation::polynomial_quotient(
            f2(),
            &Poly::from_coeffs(f2(), vec![0, 0, 0, 0, 1]),
            "f2x4",
        );
        assert_eq!(lift_idempotent(&a, &[1, 1, 0, 0]), vec![1, 0, 0, 0]);
        // a nilpotent (idempotent mod J equal to 0) lifts to 0
        assert_eq!(lift_idempotent(&a, &[0, 1, 0, 0]), vec![0, 0, 0, 0]);
        // characteristic 3: e ← 3e² − 2e³ reduces to e ← e³
        let f3 = PrimeField::new(3).unwrap();
        let b = AlgebraPresentation::polynomial_quotient(
            f3,
            &Poly::from_coeffs(f3, vec![0, 0, 0, 1]),
            "f3x3",
        );
        assert_eq!(lift_idempotent(&b, &[1, 1, 0]), vec![1, 0, 0]);
    }

    #[test]
    fn maximal_ideals_of_split_product() {
        let a = f2xf2();
        let mut s = Session::with_seed(41);
        let mds = maximal_ideals(&a, &mut s).unwrap();
        assert_eq!(mds.len(), 2);
        for md in &mds {
            assert_eq!(md.residue_dim, 1);
            assert_eq!(md.ideal.dim(), 1);
        }
        // idempotents are the two factors' units, in sorted-ideal order
        let es: Vec<&[u64]> = mds.iter().map(|m| md_e(m)).collect();
        assert!(es.contains(&&[1u64, 0][..]) && es.contains(&&[0u64, 1][..]));
    }

    fn md_e(md: &MaximalIdealData) -> &[u64] {
        &md.idempotent
    }

    #[test]
    fn maximal_ideal_of_local_ring() {
        let a = dual_numbers();
        let mut s = Session::with_seed(43);
        let mds = maximal_ideals(&a, &mut s).unwrap();
        assert_eq!(mds.len(), 1);
        assert_eq!(mds[0].residue_dim, 1);
        assert!(mds[0].ideal.contains(&[0, 1]));
        assert_eq!(mds[0].idempotent, vec![1, 0]);
    }

    #[test]
    fn maximal_ideals_of_field_extension() {
        let f4 = Arc::new(AlgebraPresentation::polynomial_quotient(
            f2(),
            &Poly::from_coeffs(f2(), vec![1, 1, 1]),
            "f4",
        ));
        let mut s = Session::with_seed(45);
        let mds = maximal_ideals(&f4, &mut s).unwrap();
        assert_eq!(mds.len(), 1);
        assert_eq!(mds[0].residue_dim, 2);
        assert_eq!(mds[0].ideal.dim(), 0);
        assert_eq!(mds[0].idempotent, vec![1, 0]);
    }

    #[test]
    fn maximal_ideals_of_mixed_product() {
        // F_2 × F_4: residue dimensions 1 and 2
        let f = AlgebraPresentation::prime_field_algebra(f2());
        let f4 = AlgebraPresentation::polynomial_quotient(
            f2(),
            &Poly::from_coeffs(f2(), vec![1, 1, 1]),
            "f4",
        );
        let a = Arc::new(f.direct_product(&f4));
        let mut s = Session::with_seed(47);
        let mds = maximal_ideals(&a, &mut s).unwrap();
        let mut dims: Vec<usize> = mds.iter().map(|m| m.residue_dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        let total: usize = mds.iter().map(|m| m.residue_dim).sum();
        assert_eq!(total, 3); // Σ dim A/m_i = dim A − dim J, and J = 0 here
    }

    #[test]
    fn noncommutative_is_rejected() {
        let u = Arc::new(AlgebraPresentation::upper_triangular(f2(), 2));
        let mut s = Session::with_seed(49);
        assert_eq!(maximal_ideals(&u, &mut s).unwrap_err(), OracleError::NotCommutative);
    }

    #[test]
    fn group_algebra_char_divides_order_is_local() {
        // F_2[C_2] ≅ F_2[t]/((t−1)²): local, residue field F_2
        let a = Arc::new(AlgebraPresentation::cyclic_group_algebra(f2(), 2));
        let mut s = Session::with_seed(51);
        let mds = maximal_ideals(&a, &mut s).unwrap();
        assert_eq!(mds.len(), 1);
        assert_eq!(mds[0].residue_dim, 1);
        assert!(mds[0].ideal.contains(&[1, 1])); // 1 + g spans the radical
        let local = localize_at_max(&a, &mds[0]).unwrap();
        assert_eq!(local.algebra.dim(), 2); // e = 1, so A_m = A
        assert_eq!(local.maximal.dim(), 1);
        assert_eq!(local.local_verified, Some(true));
    }

    #[test]
    fn local_factor_of_split_product() {
        let a = f2xf2();
        let mut s = Session::with_seed(53);
        let mds = maximal_ideals(&a, &mut s).unwrap();
        for md in &mds {
            let local = localize_at_max(&a, md).unwrap();
            assert_eq!(local.algebra.dim(), 1);
            assert_eq!(local.maximal.dim(), 0);
            assert_eq!(local.local_verified, Some(true));
            // f_m kills exactly the complementary factor
            assert_eq!(local.f_m.kernel().dim(), 1);
        }
    }

    #[test]
    fn oracle_iso_for_reduced_split_case() {
        let a = f2xf2();
        let one = Mat::identity(f2(), 1);
        let zero = Mat::zeros(f2(), 1, 1);
        let s1 = ModuleRep::new(Arc::clone(&a), "S1", vec![one, zero]).unwrap();
        let mut s = Session::with_seed(55);
        let oc = oracle_compare(&a, &s1, &mut s).unwrap();
        assert_eq!(oc.dim_am, 1);
        match oc.outcome {
            OracleOutcome::Iso { dim, .. } => assert_eq!(dim, 1),
            other => panic!("expected an isomorphism, got {other:?}"),
        }
    }

    #[test]
    fn oracle_iso_for_field_extension() {
        let f4 = Arc::new(AlgebraPresentation::polynomial_quotient(
            f2(),
            &Poly::from_coeffs(f2(), vec![1, 1, 1]),
            "f4",
        ));
        let reg = ModuleRep::regular(&f4);
        let mut s = Session::with_seed(57);
        let oc = oracle_compare(&f4, &reg, &mut s).unwrap();
        match oc.outcome {
            OracleOutcome::Iso { dim, .. } => assert_eq!(dim, 2),
            other => panic!("expected an isomorphism, got {other:?}"),
        }
    }

    #[test]
    fn oracle_mismatch_for_dual_numbers() {
        // A = F_2[x]/(x²): A_M ≅ F_2 but A_m = A has a nilpotent
        let a = dual_numbers();
        let reg = ModuleRep::regular(&a);
        let (simple, _) = reg.quotient_by(&Subspace::from_spanning(f2(), 2, &[vec![0, 1]]));
        let mut s = Session::with_seed(59);
        let oc = oracle_compare(&a, &simple, &mut s).unwrap();
        match oc.outcome {
            OracleOutcome::Mismatch { dim_am, dim_classical, nilradical_dim, error } => {
                assert_eq!(dim_am, 1);
                assert_eq!(dim_classical, 2);
                assert_eq!(nilradical_dim, 1);
                assert_eq!(error, LocalizeError::KernelNotContained);
            }
            other => panic!("expected a mismatch, got {other:?}"),
        }
    }

    #[test]
    fn oracle_mismatch_for_char_3_group_algebra() {
        // F_3[C_3] ≅ F_3[t]/((t−1)³): A_M ≅ F_3 against A_m of dimension 3
        let f3 = PrimeField::new(3).unwrap();
        let a = Arc::new(AlgebraPresentation::cyclic_group_algebra(f3, 3));
        let mut s = Session::with_seed(61);
        let reg = ModuleRep::regular(&a);
        let rad = radical(&a, &mut s);
        let (simple, _) = reg.quotient_by(rad.space());
        let oc = oracle_compare(&a, &simple, &mut s).unwrap();
        match oc.outcome {
            OracleOutcome::Mismatch { dim_am, dim_classical, nilradical_dim, error } => {
                assert_eq!(dim_am, 1);
                assert_eq!(dim_classical, 3);
                assert_eq!(nilradical_dim, 2);
                assert_eq!(error, LocalizeError::KernelNotContained);
            }
            other => panic!("expected a mismatch, got {other:?}"),
        }
    }

    #[test]
    fn representability_factors_through_the_local_ring() {
        let a = f2xf2();
        let mut s = Session::with_seed(63);
        let mds = maximal_ideals(&a, &mut s).unwrap();
        // pick the ideal killing the second factor: e = (1, 0)
        let md = mds.iter().find(|m| m.idempotent == vec![1, 0]).unwrap();
        let local = localize_at_max(&a, md).unwrap();
        let b = AlgebraPresentation::prime_field_algebra(f2());
        let first = LinMap::from_rows(f2(), &[vec![1], vec![0]]);
        let second = LinMap::from_rows(f2(), &[vec![0], vec![1]]);
        let results = representability_probe(&a, &local, &[(b.clone(), first), (b, second)]);
        assert!(results[0].is_ok());
        assert_eq!(results[1], Err(OracleError::PullbackMismatch));
        // the factorization sends e·A ≅ F_2 identically onto F_2
        assert_eq!(*results[0].as_ref().unwrap(), LinMap::identity(f2(), 1));
    }

    #[test]
    fn local_dimensions_sum_to_algebra_dimension() {
        // Σ dim A_m = dim A for split and non-split commutative cases
        for a in [
            f2xf2(),
            dual_numbers(),
            Arc::new(AlgebraPresentation::cyclic_group_algebra(f2(), 2)),
        ] {
            let mut s = Session::with_seed(65);
            let mds = maximal_ideals(&a, &mut s).unwrap();
            let total: usize = mds
                .iter()
                .map(|md| localize_at_max(&a, md).unwrap().algebra.dim())
                .sum();
            assert_eq!(total, a.dim());
        }
    }
}
