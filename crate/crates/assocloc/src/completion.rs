//! Ideal-adic completion and the Hausdorff localization. At finite
//! dimension the power tower `I ⊇ I² ⊇ …` stabilizes at some exponent
//! `N ≤ dim + 1`, so the inverse limit of the quotients `A/I^k` is just
//! the last stage `A/I^N` — the completion is again finite-dimensional
//! and fully computable, together with the canonical map `κ: A → Â` and
//! its kernel `I^N`. The Hausdorff localization re-runs the subring
//! construction over `A/ker κ`; for the rings built here the inclusion
//! `A_M ⊆ E_M` has zero kernel, so the comparison with `A_M` is always
//! an isomorphism — which is exactly what gets verified.

use std::sync::Arc;

use crate::algebra::{
    check_algebra_hom, ideal_power_chain, quotient_algebra, AlgebraPresentation, IdealBasis,
    QuotientData,
};
use crate::localize::{localize, universal_map, LocalFunctionRing, LocalizeError};
use crate::mat::Mat;
use crate::module::ModuleRep;
use crate::oracle::{localize_at_max, LocalRing, MaximalIdealData, OracleError};
use crate::session::Session;
use crate::subspace::LinMap;

/// The `I`-adic completion data of a finite-dimensional algebra.
#[derive(Debug, Clone)]
pub struct CompletionResult {
    /// Dimensions of `I, I², …, I^N` where `N` is the stable exponent.
    pub tower_dims: Vec<usize>,
    /// Minimal `N` with `I^N = I^{N+1}`.
    pub stable_exponent: usize,
    /// The quotients `A/I, A/I², …, A/I^N`.
    pub stages: Vec<QuotientData>,
    /// Transition maps `A/I^{k+1} → A/I^k`, each a surjective
    /// homomorphism.
    pub transitions: Vec<LinMap>,
    /// The completion `Â = A/I^N` (the inverse limit collapses onto the
    /// last stage once the tower is constant).
    pub completed: AlgebraPresentation,
    /// The canonical map `κ: A → Â`.
    pub kappa: LinMap,
    /// `ker κ = I^N`.
    pub kernel_kappa: IdealBasis,
}

/// Complete `A` at a two-sided ideal.
pub fn complete(algebra: &AlgebraPresentation, ideal: &IdealBasis) -> CompletionResult {
    let (powers, n) = ideal_power_chain(algebra, ideal);
    assert_eq!(powers.len(), n);
    let stages: Vec<QuotientData> = powers
        .iter()
        .map(|p| quotient_algebra(algebra, p).expect("proper ideal powers stay proper"))
        .collect();
    let mut transitions = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n - 1 {
        // A/I^{k+2} → A/I^{k+1}: lift a class through the section, then
        // project one stage down (indices: stages[k] = A/I^{k+1})
        let higher = &stages[k + 1];
        let lower = &stages[k];
        let t = higher.section.compose(&lower.projection);
        check_algebra_hom(&higher.algebra, &lower.algebra, &t)
            .expect("transition maps are induced homomorphisms");
        assert!(t.is_surjective(), "transition maps are surjective");
        transitions.push(t);
    }
    let last = stages.last().expect("the tower has at least one stage");
    CompletionResult {
        tower_dims: powers.iter().map(|p| p.dim()).collect(),
        stable_exponent: n,
        completed: last.algebra.clone(),
        kappa: last.projection.clone(),
        kernel_kappa: powers.last().expect("nonempty tower").clone(),
        stages,
        transitions,
    }
}

/// The Hausdorff localization of `A` at pointed simples, with the
/// comparison against `A_M`.
#[derive(Debug, Clone)]
pub struct HausdorffResult {
    /// The localizing ring `A_M` itself.
    pub lfr: LocalFunctionRing,
    /// `dim m` for `m = ker(A_M ⊆ E_M)`; zero by construction here, and
    /// verified rather than assumed.
    pub m_dim: usize,
    /// The `m`-adic completion of `A_M` (trivial when `m = 0`).
    pub completion: CompletionResult,
    /// `κ: A → Â_M` in the completed ring's coordinates.
    pub kappa: LinMap,
    /// `ker κ` pulled back to `A`.
    pub kernel_kappa: IdealBasis,
    /// `A/ker κ`.
    pub quotient: QuotientData,
    /// The Hausdorff localization `H = (A/ker κ)_M`.
    pub h: LocalFunctionRing,
    /// The universal comparison `H → A_M`.
    pub comparison: LinMap,
    pub comparison_is_iso: bool,
}

/// Run the Hausdorff construction: complete `A_M` at the kernel of its
/// inclusion into `E_M`, quotient `A` by `ker κ`, localize the quotient
/// at the induced summands, and compare with `A_M` via the universal
/// property.
pub fn hausdorff_localize(
    algebra: &Arc<AlgebraPresentation>,
    summands: &[ModuleRep],
    session: &mut Session,
) -> Result<HausdorffResult, LocalizeError> {
    let lfr = localize(algebra, summands, session)?;
    let pres = lfr.to_presentation();

    // m = ker(A_M ⊆ E_M): the inclusion is injective on basis elements
    // by construction; verify instead of assuming
    let m_dim = {
        let rows: Vec<Vec<u64>> = lfr.basis().iter().map(Mat::flatten).collect();
        let total = lfr.context().total_dim();
        let incl = LinMap::from_rows_with_shape(pres.field(), lfr.dim(), total * total, &rows);
        incl.kernel().dim()
    };
    assert_eq!(m_dim, 0, "the subring basis embeds injectively");
    let completion = complete(&pres, &IdealBasis::zero(&pres));
    assert_eq!(completion.stable_exponent, 1);
    assert_eq!(completion.completed.dim(), pres.dim());

    // κ: A → Â_M = A_M  is η followed by the (trivial) completion map
    let kappa = lfr.eta_in_basis().compose(&completion.kappa);
    let kernel_kappa = lfr.kernel().clone();
    {
        // ker κ = ker η since the completion map is injective here
        let k = kappa.kernel();
        assert_eq!(k.dim(), kernel_kappa.dim());
        for v in kernel_kappa.space().basis() {
            assert!(k.contains(v));
        }
    }

    let quotient = quotient_algebra(algebra, &kernel_kappa)
        .expect("ker κ is proper: the unit acts as the identity");
    let qarc = Arc::new(quotient.algebra.clone());
    let induced: Vec<ModuleRep> = summands
        .iter()
        .map(|m| {
            let action: Vec<Mat> = (0..qarc.dim())
                .map(|i| m.rho(&quotient.section.apply(&unit_vec(qarc.dim(), i))))
                .collect();
            ModuleRep::new(Arc::clone(&qarc), format!("{}~", m.name()), action)
                .expect("ker κ annihilates every summand, so the action descends")
        })
        .collect();
    let h = localize(&qarc, &induced, session)?;

    // κ̄: A/ker κ → A_M, then the universal property of H
    let kappa_bar_rows: Vec<Vec<u64>> = (0..qarc.dim())
        .map(|i| kappa.apply(&quotient.section.apply(&unit_vec(qarc.dim(), i))))
        .collect();
    let kappa_bar =
        LinMap::from_rows_with_shape(pres.field(), qarc.dim(), pres.dim(), &kappa_bar_rows);
    let um = universal_map(&h, &pres, &kappa_bar)?;
    let comparison_is_iso = um.rho.is_bijective();
    Ok(HausdorffResult {
        lfr,
        m_dim,
        completion,
        kappa,
        kernel_kappa,
        quotient,
        h,
        comparison: um.rho,
        comparison_is_iso,
    })
}

fn unit_vec(len: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; len];
    v[i] = 1;
    v
}

/// Commutative Hausdorff comparison: complete the classical local factor
/// `A_m` at its maximal ideal, pull `ker κ` back to `A`, localize the
/// quotient, and check that `H` embeds into `Â_m`.
#[derive(Debug, Clone)]
pub struct CommutativeHausdorff {
    pub local: LocalRing,
    /// `(e·m)`-adic completion of `A_m`.
    pub completion: CompletionResult,
    /// `κ: A → Â_m`.
    pub kappa: LinMap,
    /// `ker κ` pulled back to `A`.
    pub kernel_kappa: IdealBasis,
    /// `H = (A/ker κ)` localized at the image of `m`.
    pub h: LocalRing,
    /// The factorization `H → Â_m`.
    pub comparison: LinMap,
    pub comparison_injective: bool,
}

pub fn hausdorff_commutative(
    algebra: &Arc<AlgebraPresentation>,
    md: &MaximalIdealData,
) -> Result<CommutativeHausdorff, OracleError> {
    let local = localize_at_max(algebra, md)?;
    let completion = complete(&local.algebra, &local.maximal);
    // κ: A → A_m → Â_m
    let kappa = local.f_m.compose(&completion.kappa);
    let kernel_rows: Vec<Vec<u64>> = kappa.kernel().basis().to_vec();
    let kernel_kappa = IdealBasis::generated_by(algebra, &kernel_rows);
    assert_eq!(kernel_kappa.dim(), kappa.kernel().dim(), "ker κ is already an ideal");

    let qd = quotient_algebra(algebra, &kernel_kappa).expect("κ is unital, so ker κ is proper");
    let qarc = Arc::new(qd.algebra.clone());
    // the image of m in the quotient is again maximal, with the image
    // of e as its idempotent
    let m_image: Vec<Vec<u64>> = md
        .ideal
        .space()
        .basis()
        .iter()
        .map(|v| qd.projection.apply(v))
        .collect();
    let ideal = IdealBasis::generated_by(&qarc, &m_image);
    let e_image = qd.projection.apply(&md.idempotent);
    let md_q = MaximalIdealData {
        ideal,
        residue_dim: md.residue_dim,
        idempotent: e_image,
    };
    let h = localize_at_max(&qarc, &md_q)?;

    // H → Â_m: a coset `a + ker κ` goes to κ(a); on the local basis this
    // is section-then-κ restricted through f_m's section
    let rows: Vec<Vec<u64>> = (0..h.algebra.dim())
        .map(|i| {
            let in_quotient = h.section.apply(&unit_vec(h.algebra.dim(), i));
            let in_a = qd.section.apply(&in_quotient);
            kappa.apply(&in_a)
        })
        .collect();
    let comparison = LinMap::from_rows_with_shape(
        algebra.field(),
        h.algebra.dim(),
        completion.completed.dim(),
        &rows,
    );
    check_algebra_hom(&h.algebra, &completion.completed, &comparison)
        .expect("the induced comparison is a homomorphism");
    let comparison_injective = comparison.is_injective();
    Ok(CommutativeHausdorff {
        local,
        completion,
        kappa,
        kernel_kappa,
        h,
        comparison,
        comparison_injective,
    })
}
