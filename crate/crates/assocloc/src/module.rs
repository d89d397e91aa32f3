//! Right modules over structure-constant algebras as tuples of action
//! matrices: validation, submodule spinning, simplicity testing (Meataxe
//! with a Norton dual certificate and an exhaustive fallback), composition
//! series, module isomorphism, simple enumeration, and the radical.
//!
//! Row-vector convention: a module element is a row `v`, the basis element
//! `e_i` acts as `v ↦ v·ρ(e_i)`, and `ρ(ab) = ρ(a)·ρ(b)` — composition
//! reads left to right.

use std::sync::Arc;

use crate::algebra::{AlgebraPresentation, IdealBasis};
use crate::mat::{Insertion, Mat, SpanSolver};
use crate::session::Session;
use crate::subspace::{solve_commutant_system, LinMap, Subspace};
use thiserror::Error;

/// Violations found when validating a module presentation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    /// `ρ(e_i)·ρ(e_j) ≠ Σ_k c[i][j][k]·ρ(e_k)`.
    #[error("action does not respect the product e{0}·e{1}")]
    RelationViolated(usize, usize),
    /// The unit does not act as the identity matrix.
    #[error("unit does not act as the identity")]
    UnitNotIdentity,
    /// Action matrices are not square of one common size, one per basis element.
    #[error("need one square action matrix of a common size per algebra basis element")]
    ShapeMismatch,
    /// The zero module has no simplicity status.
    #[error("zero module has no simplicity status")]
    ZeroModule,
}

/// Verdict of a simplicity test; the witness is a proper nonzero submodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    NotSimple { witness: Subspace },
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple)
    }
}

/// A right module presented by one action matrix per algebra basis element.
#[derive(Debug, Clone)]
pub struct ModuleRep {
    algebra: Arc<AlgebraPresentation>,
    name: String,
    dim: usize,
    action: Vec<Mat>,
}

impl ModuleRep {
    /// Validate and wrap a raw action; reports every violated relation.
    pub fn new(
        algebra: Arc<AlgebraPresentation>,
        name: impl Into<String>,
        action: Vec<Mat>,
    ) -> Result<ModuleRep, Vec<ModuleError>> {
        let n = algebra.dim();
        if action.len() != n {
            return Err(vec![ModuleError::ShapeMismatch]);
        }
        let m = if action.is_empty() { 0 } else { action[0].rows() };
        for a in &action {
            if a.rows() != m || a.cols() != m || a.field() != algebra.field() {
                return Err(vec![ModuleError::ShapeMismatch]);
            }
        }
        let module = ModuleRep { algebra, name: name.into(), dim: m, action };
        let mut errs = Vec::new();
        if !module.rho(module.algebra.unit()).is_identity() {
            errs.push(ModuleError::UnitNotIdentity);
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = module.action[i].mul(&module.action[j]);
                let rhs = module.rho(module.algebra.basis_product(i, j));
                if lhs != rhs {
                    errs.push(ModuleError::RelationViolated(i, j));
                }
            }
        }
        if errs.is_empty() {
            Ok(module)
        } else {
            Err(errs)
        }
    }

    /// The right regular module: `ρ(e_j)` is right multiplication by `e_j`.
    pub fn regular(algebra: &Arc<AlgebraPresentation>) -> ModuleRep {
        let action = (0..algebra.dim()).map(|j| algebra.right_mult_matrix(j)).collect();
        let name = format!("{}_reg", algebra.name());
        ModuleRep::new(Arc::clone(algebra), name, action)
            .expect("regular module of a valid algebra is valid")
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> ModuleRep {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Mat] {
        &self.action
    }

    /// Same algebra, same dimension, identical action matrices.
    pub fn same_presentation(&self, other: &ModuleRep) -> bool {
        *self.algebra == *other.algebra && self.action == other.action
    }

    /// The acting matrix `ρ(a)` of an algebra element.
    pub fn rho(&self, a: &[u64]) -> Mat {
        assert_eq!(a.len(), self.algebra.dim());
        let f = self.algebra.field();
        let mut out = Mat::zeros(f, self.dim, self.dim);
        for (i, &ai) in a.iter().enumerate() {
            if ai != 0 {
                out = out.add(&self.action[i].scale(ai));
            }
        }
        out
    }

    pub fn act(&self, v: &[u64], a: &[u64]) -> Vec<u64> {
        self.rho(a).apply_row(v)
    }

    /// The structure morphism `η: A → E_M` as an `n × m²` linear map,
    /// together with its image and its kernel (the annihilator ideal).
    pub fn structure_morphism(&self) -> StructureMorphism {
        let f = self.algebra.field();
        let rows: Vec<Vec<u64>> = self.action.iter().map(|m| m.flatten()).collect();
        let map = LinMap::from_rows_with_shape(f, self.algebra.dim(), self.dim * self.dim, &rows);
        let image = map.image();
        let kernel = IdealBasis::new(&self.algebra, map.kernel().basis())
            .expect("annihilator is a two-sided ideal");
        StructureMorphism { map, image, kernel }
    }

    /// The annihilator ideal `{a : ρ(a) = 0}`.
    pub fn annihilator(&self) -> IdealBasis {
        self.structure_morphism().kernel
    }

    /// Smallest invariant subspace containing `v`.
    pub fn spin(&self, v: &[u64]) -> Subspace {
        spin_under(self.algebra.field(), self.dim, &self.action, &[v.to_vec()])
    }

    /// Smallest invariant subspace containing all the seeds.
    pub fn spin_many(&self, seeds: &[Vec<u64>]) -> Subspace {
        spin_under(self.algebra.field(), self.dim, &self.action, seeds)
    }

    /// Restrict the action to an invariant subspace; returns the module on
    /// the subspace basis and the embedding as a linear map.
    pub fn submodule_from(&self, sub: &Subspace) -> (ModuleRep, LinMap) {
        assert_eq!(sub.ambient(), self.dim);
        let f = self.algebra.field();
        let k = sub.dim();
        let action: Vec<Mat> = self
            .action
            .iter()
            .map(|m| {
                let rows: Vec<Vec<u64>> = sub
                    .basis()
                    .iter()
                    .map(|b| {
                        sub.coords_of(&m.apply_row(b))
                            .expect("subspace must be invariant under the action")
                    })
                    .collect();
                if k == 0 {
                    Mat::zeros(f, 0, 0)
                } else {
                    Mat::from_rows(f, &rows)
                }
            })
            .collect();
        let module = ModuleRep::new(Arc::clone(&self.algebra), format!("{}.s", self.name), action)
            .expect("restriction to an invariant subspace is a module");
        let embed = LinMap::from_rows_with_shape(f, k, self.dim, sub.basis());
        (module, embed)
    }

    /// Quotient by an invariant subspace; returns the module on the free
    /// (non-pivot) coordinates and the projection map.
    pub fn quotient_by(&self, sub: &Subspace) -> (ModuleRep, LinMap) {
        assert_eq!(sub.ambient(), self.dim);
        let f = self.algebra.field();
        let pivots: Vec<usize> = sub
            .basis()
            .iter()
            .map(|row| row.iter().position(|&x| x != 0).unwrap())
            .collect();
        let free: Vec<usize> = (0..self.dim).filter(|i| !pivots.contains(i)).collect();
        let q = free.len();
        let reduce = |v: &[u64]| -> Vec<u64> {
            let mut residue = v.to_vec();
            for (row, &p) in sub.basis().iter().zip(&pivots) {
                let c = residue[p];
                if c != 0 {
                    for (j, &x) in row.iter().enumerate() {
                        residue[j] = f.sub(residue[j], f.mul(c, x));
                    }
                }
            }
            free.iter().map(|&i| residue[i]).collect()
        };
        for row in sub.basis() {
            for m in &self.action {
                assert!(
                    reduce(&m.apply_row(row)).iter().all(|&x| x == 0),
                    "subspace must be invariant under the action"
                );
            }
        }
        let action: Vec<Mat> = self
            .action
            .iter()
            .map(|m| {
                let rows: Vec<Vec<u64>> = free
                    .iter()
                    .map(|&i| {
                        let mut e = vec![0u64; self.dim];
                        e[i] = 1;
                        reduce(&m.apply_row(&e))
                    })
                    .collect();
                if q == 0 {
                    Mat::zeros(f, 0, 0)
                } else {
                    Mat::from_rows(f, &rows)
                }
            })
            .collect();
        let module = ModuleRep::new(Arc::clone(&self.algebra), format!("{}.q", self.name), action)
            .expect("quotient by an invariant subspace is a module");
        let proj_rows: Vec<Vec<u64>> = (0..self.dim)
            .map(|i| {
                let mut e = vec![0u64; self.dim];
                e[i] = 1;
                reduce(&e)
            })
            .collect();
        let project = LinMap::from_rows_with_shape(f, self.dim, q, &proj_rows);
        (module, project)
    }

    /// Block-diagonal direct sum; all summands must share the algebra.
    pub fn direct_sum(summands: &[ModuleRep]) -> ModuleRep {
        assert!(!summands.is_empty());
        let algebra = Arc::clone(summands[0].algebra());
        for s in summands {
            assert_eq!(**s.algebra(), *algebra, "summands must share the algebra");
        }
        let f = algebra.field();
        let total: usize = summands.iter().map(|s| s.dim).sum();
        let action: Vec<Mat> = (0..algebra.dim())
            .map(|i| {
                let mut big = Mat::zeros(f, total, total);
                let mut off = 0usize;
                for s in summands {
                    for r in 0..s.dim {
                        for c in 0..s.dim {
                            big.set(off + r, off + c, s.action[i].at(r, c));
                        }
                    }
                    off += s.dim;
                }
                big
            })
            .collect();
        let name = summands.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join("+");
        ModuleRep::new(algebra, name, action).expect("direct sum of modules is a module")
    }

    /// Exhaustive simplicity test: spin every nonzero vector (up to scalar).
    /// Intended for small spaces; the caller controls feasibility.
    pub fn is_simple_exhaustive(&self) -> Result<Simplicity, ModuleError> {
        if self.dim == 0 {
            return Err(ModuleError::ZeroModule);
        }
        if self.dim == 1 {
            return Ok(Simplicity::Simple);
        }
        let p = self.algebra.field().modulus();
        // projective representatives: first nonzero coordinate = 1
        for lead in 0..self.dim {
            let tail = self.dim - lead - 1;
            let mut odo = vec![0u64; tail];
            loop {
                let mut v = vec![0u64; self.dim];
                v[lead] = 1;
                v[lead + 1..].copy_from_slice(&odo);
                let s = self.spin(&v);
                if s.dim() < self.dim {
                    return Ok(Simplicity::NotSimple { witness: s });
                }
                // odometer
                let mut pos = 0;
                loop {
                    if pos == tail {
                        break;
                    }
                    odo[pos] += 1;
                    if odo[pos] < p {
                        break;
                    }
                    odo[pos] = 0;
                    pos += 1;
                }
                if pos == tail {
                    break;
                }
            }
        }
        Ok(Simplicity::Simple)
    }

    /// Meataxe simplicity test with Norton's dual certificate; falls back
    /// to the exhaustive spin when rounds stay inconclusive and the space
    /// is within the session cap (always at the corpus sizes used here).
    pub fn is_simple(&self, session: &mut Session) -> Result<Simplicity, ModuleError> {
        if self.dim == 0 {
            return Err(ModuleError::ZeroModule);
        }
        if self.dim == 1 {
            return Ok(Simplicity::Simple);
        }
        let rounds = 24usize;
        for _ in 0..rounds {
            if let Some(verdict) = self.meataxe_round(session) {
                return Ok(verdict);
            }
        }
        let p = self.algebra.field().modulus() as u128;
        let count = p.checked_pow(self.dim as u32).unwrap_or(u128::MAX);
        if count <= session.cap() as u128 {
            return self.is_simple_exhaustive();
        }
        // keep sampling; Norton rounds decide with high probability
        for _ in 0..(rounds * 10) {
            if let Some(verdict) = self.meataxe_round(session) {
                return Ok(verdict);
            }
        }
        // last resort: exhaustive regardless of the cap — never wrong
        self.is_simple_exhaustive()
    }

    /// One randomized Meataxe round; `None` when inconclusive.
    fn meataxe_round(&self, session: &mut Session) -> Option<Simplicity> {
        let f = self.algebra.field();
        let a = session.nonzero_vector(f.modulus(), self.algebra.dim());
        let theta = self.rho(&a);
        let mu = theta.min_poly();
        for g in mu.distinct_irreducible_factors() {
            let ng = theta.eval_poly(&g);
            let kernel = ng.left_kernel();
            if kernel.is_empty() {
                continue;
            }
            for w in &kernel {
                let s = self.spin(w);
                if s.dim() < self.dim {
                    return Some(Simplicity::NotSimple { witness: s });
                }
            }
            if kernel.len() == g.degree().unwrap() {
                // Norton's test: spin a dual kernel vector under the
                // transposed action; a proper dual submodule yields a
                // proper submodule as its orthogonal complement.
                let dual_action: Vec<Mat> = self.action.iter().map(|m| m.transpose()).collect();
                let ng_t = ng.transpose();
                let dual_kernel = ng_t.left_kernel();
                let u = &dual_kernel[0];
                let dual_span = spin_under(f, self.dim, &dual_action, &[u.clone()]);
                if dual_span.dim() < self.dim {
                    let ortho = dual_span.basis_mat().transpose().left_kernel();
                    let witness = Subspace::from_spanning(f, self.dim, &ortho);
                    assert!(witness.dim() > 0 && witness.dim() < self.dim);
                    debug_assert!(self.is_invariant(&witness));
                    return Some(Simplicity::NotSimple { witness });
                }
                return Some(Simplicity::Simple);
            }
        }
        None
    }

    pub fn is_invariant(&self, sub: &Subspace) -> bool {
        sub.basis()
            .iter()
            .all(|b| self.action.iter().all(|m| sub.contains(&m.apply_row(b))))
    }

    /// Composition series by recursive splitting; factors listed bottom-up.
    pub fn chop(&self, session: &mut Session) -> CompositionSeries {
        let mut factors = Vec::new();
        self.chop_into(session, &mut factors);
        let mut class_reps: Vec<ModuleRep> = Vec::new();
        let mut class_of = Vec::with_capacity(factors.len());
        for fac in &factors {
            let mut found = None;
            for (ci, rep) in class_reps.iter().enumerate() {
                if modules_isomorphic(fac, rep, session).is_some() {
                    found = Some(ci);
                    break;
                }
            }
            let ci = found.unwrap_or_else(|| {
                class_reps.push(fac.clone());
                class_reps.len() - 1
            });
            class_of.push(ci);
        }
        CompositionSeries { factors, class_reps, class_of }
    }

    fn chop_into(&self, session: &mut Session, out: &mut Vec<ModuleRep>) {
        if self.dim == 0 {
            return;
        }
        match self.is_simple(session).expect("nonzero module") {
            Simplicity::Simple => out.push(self.clone()),
            Simplicity::NotSimple { witness } => {
                let (sub, _) = self.submodule_from(&witness);
                let (quot, _) = self.quotient_by(&witness);
                sub.chop_into(session, out);
                quot.chop_into(session, out);
            }
        }
    }
}

/// The structure morphism `η` with its image subspace and kernel ideal.
#[derive(Debug, Clone)]
pub struct StructureMorphism {
    /// `n × m²` map: algebra coordinates to flattened endomorphisms.
    pub map: LinMap,
    pub image: Subspace,
    pub kernel: IdealBasis,
}

/// Composition factors (bottom-up), their distinct isomorphism classes,
/// and the class index of each factor.
#[derive(Debug, Clone)]
pub struct CompositionSeries {
    pub factors: Vec<ModuleRep>,
    pub class_reps: Vec<ModuleRep>,
    pub class_of: Vec<usize>,
}

impl CompositionSeries {
    /// Multiplicity of each isomorphism class, indexed like `class_reps`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.class_reps.len()];
        for &c in &self.class_of {
            counts[c] += 1;
        }
        counts
    }

    /// Sorted `(factor dim, multiplicity)` pairs — a seed-stable signature.
    pub fn multiset_signature(&self) -> Vec<(usize, usize)> {
        let mut sig: Vec<(usize, usize)> = self
            .class_reps
            .iter()
            .zip(self.multiplicities())
            .map(|(rep, mult)| (rep.dim(), mult))
            .collect();
        sig.sort_unstable();
        sig
    }
}

fn spin_under(
    field: crate::field::PrimeField,
    dim: usize,
    mats: &[Mat],
    seeds: &[Vec<u64>],
) -> Subspace {
    let mut solver = SpanSolver::new(field, dim);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut queue: Vec<Vec<u64>> = Vec::new();
    for v in seeds {
        assert_eq!(v.len(), dim);
        if let Insertion::Added = solver.insert(v) {
            rows.push(v.clone());
            queue.push(v.clone());
        }
    }
    while let Some(w) = queue.pop() {
        for m in mats {
            let u = m.apply_row(&w);
            if let Insertion::Added = solver.insert(&u) {
                rows.push(u.clone());
                queue.push(u);
            }
        }
    }
    Subspace::from_spanning(field, dim, &rows)
}

/// Invertible intertwiner `F` with `ρ_M(e_i)·F = F·ρ_N(e_i)` for all `i`,
/// or `None` when the modules are not isomorphic.
///
/// Pre-filter: equal dimension and per-generator minimal-polynomial
/// signatures (conjugation preserves both). Then the intertwiner space is
/// solved exactly; invertible elements are located by deterministic
/// enumeration when the space is small enough, otherwise by seeded
/// sampling with a min-poly invertibility check.
pub fn modules_isomorphic(m: &ModuleRep, n: &ModuleRep, session: &mut Session) -> Option<Mat> {
    assert_eq!(**m.algebra(), **n.algebra(), "modules must share the algebra");
    let f = m.algebra().field();
    if m.dim() != n.dim() {
        return None;
    }
    if m.dim() == 0 {
        return Some(Mat::zeros(f, 0, 0));
    }
    for (a, b) in m.action().iter().zip(n.action()) {
        if a.min_poly() != b.min_poly() {
            return None;
        }
    }
    let constraints: Vec<(Mat, Mat)> = m
        .action()
        .iter()
        .cloned()
        .zip(n.action().iter().cloned())
        .collect();
    let space = solve_commutant_system(f, m.dim(), n.dim(), &constraints)
        .expect("intertwiner system shapes are consistent");
    if space.dim() == 0 {
        return None;
    }
    let p = f.modulus();
    let d = space.dim();
    let total = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let build = |coords: &[u64]| -> Mat {
        Mat::from_flat(f, m.dim(), n.dim(), space.linear_combination(coords))
    };
    if total <= session.cap() as u128 {
        // deterministic lexicographic sweep
        let mut odo = vec![0u64; d];
        loop {
            if odo.iter().any(|&x| x != 0) {
                let cand = build(&odo);
                if cand.invert_via_min_poly().is_ok() {
                    return Some(cand);
                }
            }
            let mut pos = 0;
            loop {
                if pos == d {
                    return None;
                }
                odo[pos] += 1;
                if odo[pos] < p {
                    break;
                }
                odo[pos] = 0;
                pos += 1;
            }
        }
    }
    for _ in 0..512 {
        let coords = session.nonzero_vector(p, d);
        let cand = build(&coords);
        if cand.invert_via_min_poly().is_ok() {
            return Some(cand);
        }
    }
    None
}

/// All simple right modules up to isomorphism: deduplicated composition
/// factors of the regular module, named `<algebra>_S<k>` in order of first
/// appearance.
pub fn simples(algebra: &Arc<AlgebraPresentation>, session: &mut Session) -> Vec<ModuleRep> {
    let series = ModuleRep::regular(algebra).chop(session);
    series
        .class_reps
        .into_iter()
        .enumerate()
        .map(|(k, rep)| {
            let name = format!("{}_S{}", algebra.name(), k);
            rep.with_name(name)
        })
        .collect()
}

/// The Jacobson radical as the annihilator of the sum of all simples.
pub fn radical(algebra: &Arc<AlgebraPresentation>, session: &mut Session) -> IdealBasis {
    let s = simples(algebra, session);
    ModuleRep::direct_sum(&s).annihilator()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::Poly;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn dual_numbers() -> Arc<AlgebraPresentation> {
        let m = Poly::from_coeffs(f2(), vec![0, 0, 1]);
        Arc::new(AlgebraPresentation::polynomial_quotient(f2(), &m, "f2x2"))
    }

    fn m2f2() -> Arc<AlgebraPresentation> {
        Arc::new(AlgebraPresentation::matrix_algebra(f2(), 2))
    }

    fn ut2f2() -> Arc<AlgebraPresentation> {
        Arc::new(AlgebraPresentation::upper_triangular(f2(), 2))
    }

    /// natural module of M_2: ρ(e_{ab}) is the matrix unit E_{ab}
    fn natural_m2(alg: &Arc<AlgebraPresentation>) -> ModuleRep {
        let units: Vec<Mat> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(a, b)| {
                let mut m = Mat::zeros(f2(), 2, 2);
                m.set(a, b, 1);
                m
            })
            .collect();
        ModuleRep::new(Arc::clone(alg), "m2f2_nat", units).unwrap()
    }

    #[test]
    fn regular_of_dual_numbers() {
        let a = dual_numbers();
        let reg = ModuleRep::regular(&a);
        // ρ(x) = [[0,1],[0,0]] in basis {1, x}
        assert_eq!(reg.action()[1], Mat::from_rows(f2(), &[vec![0, 1], vec![0, 0]]));
    }

    #[test]
    fn invalid_action_reported() {
        let a = dual_numbers();
        // ρ(x) = ρ(1) = [1] on a 1-dim space: ρ(x)² = 1 ≠ ρ(x²) = 0
        let bad = ModuleRep::new(
            Arc::clone(&a),
            "bad",
            vec![Mat::identity(f2(), 1), Mat::identity(f2(), 1)],
        );
        let errs = bad.unwrap_err();
        assert!(errs.contains(&ModuleError::RelationViolated(1, 1)));
    }

    #[test]
    fn unit_must_act_as_identity() {
        let a = dual_numbers();
        let zero = Mat::zeros(f2(), 1, 1);
        let errs = ModuleRep::new(Arc::clone(&a), "bad", vec![zero.clone(), zero]).unwrap_err();
        assert!(errs.contains(&ModuleError::UnitNotIdentity));
    }

    #[test]
    fn structure_morphism_of_natural_module() {
        let a = m2f2();
        let nat = natural_m2(&a);
        let sm = nat.structure_morphism();
        assert_eq!(sm.map.rank(), 4); // η is bijective onto E_M
        assert_eq!(sm.kernel.dim(), 0);
    }

    #[test]
    fn structure_morphism_with_kernel() {
        let a = dual_numbers();
        let reg = ModuleRep::regular(&a);
        let quot_module = {
            let x_span = Subspace::from_spanning(f2(), 2, &[vec![0, 1]]);
            reg.quotient_by(&x_span).0
        };
        let sm = quot_module.structure_morphism();
        assert_eq!(sm.map.rank(), 1);
        assert_eq!(sm.kernel.dim(), 1);
        assert!(sm.kernel.contains(&[0, 1]));
    }

    #[test]
    fn spin_examples() {
        let u = ut2f2();
        let reg = ModuleRep::regular(&u);
        // basis order e00, e01, e11: spin(e01) = span{e01}
        let s = reg.spin(&[0, 1, 0]);
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[0, 1, 0]));
        // the unit generates everything
        assert_eq!(reg.spin(&[1, 0, 1]).dim(), 3);
        // zero spins to zero
        assert_eq!(reg.spin(&[0, 0, 0]).dim(), 0);
    }

    #[test]
    fn natural_module_is_simple_both_ways() {
        let a = m2f2();
        let nat = natural_m2(&a);
        assert!(nat.is_simple_exhaustive().unwrap().is_simple());
        let mut s = Session::with_seed(1);
        assert!(nat.is_simple(&mut s).unwrap().is_simple());
    }

    #[test]
    fn dual_numbers_regular_is_not_simple() {
        let a = dual_numbers();
        let reg = ModuleRep::regular(&a);
        let verdict = reg.is_simple_exhaustive().unwrap();
        match verdict {
            Simplicity::NotSimple { witness } => {
                assert_eq!(witness.dim(), 1);
                assert!(witness.contains(&[0, 1]));
            }
            Simplicity::Simple => panic!("regular module of dual numbers is reducible"),
        }
        let mut s = Session::with_seed(3);
        assert!(!reg.is_simple(&mut s).unwrap().is_simple());
    }

    #[test]
    fn zero_module_has_no_simplicity() {
        let a = dual_numbers();
        let reg = ModuleRep::regular(&a);
        let zero = reg.quotient_by(&Subspace::full(f2(), 2)).0;
        assert_eq!(zero.dim(), 0);
        assert_eq!(zero.is_simple_exhaustive(), Err(ModuleError::ZeroModule));
    }

    #[test]
    fn chop_of_dual_numbers_regular() {
        let a = dual_numbers();
        let mut s = Session::with_seed(5);
        let series = ModuleRep::regular(&a).chop(&mut s);
        assert_eq!(series.factors.len(), 2);
        assert!(series.factors.iter().all(|f| f.dim() == 1));
        assert_eq!(series.class_reps.len(), 1); // both factors ≅ F_2
        assert_eq!(series.multiplicities(), vec![2]);
    }

    #[test]
    fn chop_of_upper_triangular_regular() {
        let u = ut2f2();
        let mut s = Session::with_seed(7);
        let series = ModuleRep::regular(&u).chop(&mut s);
        assert_eq!(series.factors.len(), 3);
        assert_eq!(series.class_reps.len(), 2);
        let mut mults = series.multiplicities();
        mults.sort_unstable();
        assert_eq!(mults, vec![1, 2]);
        assert_eq!(series.multiset_signature(), vec![(1, 1), (1, 2)]);
    }

    #[test]
    fn isomorphism_accepts_conjugates_and_rejects_distinct() {
        let a = m2f2();
        let nat = natural_m2(&a);
        let mut s = Session::with_seed(11);
        // conjugate by P = [[1,1],[0,1]]
        let p = Mat::from_rows(f2(), &[vec![1, 1], vec![0, 1]]);
        let p_inv = p.invert_via_min_poly().unwrap();
        let conj: Vec<Mat> = nat.action().iter().map(|m| p_inv.mul(m).mul(&p)).collect();
        let other = ModuleRep::new(Arc::clone(&a), "nat_conj", conj).unwrap();
        let f = modules_isomorphic(&nat, &other, &mut s).expect("conjugates are isomorphic");
        // verify the intertwiner equations directly
        for (x, y) in nat.action().iter().zip(other.action()) {
            assert_eq!(x.mul(&f), f.mul(y));
        }

        let u = ut2f2();
        let mut t = Session::with_seed(11);
        let series = ModuleRep::regular(&u).chop(&mut t);
        let distinct: Vec<&ModuleRep> = series.class_reps.iter().collect();
        assert_eq!(distinct.len(), 2);
        assert!(modules_isomorphic(distinct[0], distinct[1], &mut t).is_none());
    }

    #[test]
    fn simples_of_corpus_algebras() {
        let mut s = Session::with_seed(13);
        let m2 = m2f2();
        let list = simples(&m2, &mut s);
        assert_eq!(list.len(), 1);
        assert_eq!(list[0].dim(), 2);

        let ut = ut2f2();
        let list = simples(&ut, &mut s);
        assert_eq!(list.len(), 2);
        assert!(list.iter().all(|m| m.dim() == 1));

        // F_4 as an F_2-algebra: one simple of dimension 2
        let f4 = Arc::new(AlgebraPresentation::polynomial_quotient(
            f2(),
            &Poly::from_coeffs(f2(), vec![1, 1, 1]),
            "f4",
        ));
        let list = simples(&f4, &mut s);
        assert_eq!(list.len(), 1);
        assert_eq!(list[0].dim(), 2);
    }

    #[test]
    fn radical_examples() {
        let mut s = Session::with_seed(17);
        // radical of M_2(F_2) is zero
        assert_eq!(radical(&m2f2(), &mut s).dim(), 0);
        // radical of the dual numbers is (x)
        let j = radical(&dual_numbers(), &mut s);
        assert_eq!(j.dim(), 1);
        assert!(j.contains(&[0, 1]));
        // radical of ut2 is span{e01}, and J² = 0
        let u = ut2f2();
        let j = radical(&u, &mut s);
        assert_eq!(j.dim(), 1);
        assert!(j.contains(&[0, 1, 0]));
        let j2 = crate::algebra::ideal_product(&u, &j, &j);
        assert_eq!(j2.dim(), 0);
        // radical of the group algebra F_2[C_2] is span{1+g}
        let gc = Arc::new(AlgebraPresentation::cyclic_group_algebra(f2(), 2));
        let j = radical(&gc, &mut s);
        assert_eq!(j.dim(), 1);
        assert!(j.contains(&[1, 1]));
    }

    #[test]
    fn direct_sum_blocks() {
        let u = ut2f2();
        let mut s = Session::with_seed(19);
        let list = simples(&u, &mut s);
        let sum = ModuleRep::direct_sum(&[list[0].clone(), list[1].clone()]);
        assert_eq!(sum.dim(), 2);
        // e00 acts as diag(1,0) or diag(0,1) depending on factor order
        let d = sum.action()[0].clone();
        let diag = (d.at(0, 0), d.at(1, 1));
        assert!(diag == (1, 0) || diag == (0, 1));
        assert_eq!(d.at(0, 1), 0);
        assert_eq!(d.at(1, 0), 0);
    }

    #[test]
    fn meataxe_matches_exhaustive_across_seeds() {
        let u = ut2f2();
        let reg = ModuleRep::regular(&u);
        let exhaustive = reg.is_simple_exhaustive().unwrap().is_simple();
        for seed in 0..10u64 {
            let mut s = Session::with_seed(seed);
            assert_eq!(reg.is_simple(&mut s).unwrap().is_simple(), exhaustive);
        }
        let a = m2f2();
        let nat = natural_m2(&a);
        let exhaustive = nat.is_simple_exhaustive().unwrap().is_simple();
        for seed in 0..10u64 {
            let mut s = Session::with_seed(seed);
            assert_eq!(nat.is_simple(&mut s).unwrap().is_simple(), exhaustive);
        }
    }

    #[test]
    fn chop_multiset_is_seed_invariant() {
        let u = ut2f2();
        let reg = ModuleRep::regular(&u);
        let mut first = None;
        for seed in 0..10u64 {
            let mut s = Session::with_seed(seed);
            let sig = reg.chop(&mut s).multiset_signature();
            match &first {
                None => first = Some(sig),
                Some(expected) => assert_eq!(&sig, expected),
            }
        }
    }
}
