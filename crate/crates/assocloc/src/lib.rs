//! Exact construction of localizing rings for finite-dimensional
//! associative algebras over prime fields.
//!
//! An algebra `A` over `F_p` is given by structure constants on a finite
//! basis; a right `A`-module `M` by one action matrix per basis element.
//! Everything downstream is exact linear algebra over `F_p`:
//!
//! * [`module`] chops modules into composition factors (Meataxe with an
//!   exhaustive fallback at desk scale) and decides module isomorphism.
//! * [`localize`] builds the local function ring `A_M` inside
//!   `E_M = End(M)`: the subring generated by the image of the structure
//!   morphism together with the inverses of the image elements that land in
//!   the unit set of the diagonal division ring `D_M`. It also verifies the
//!   universal property and the product decomposition over several pointed
//!   simples.
//! * [`completion`] runs ideal-adic completion towers and the Hausdorff
//!   localization `H = (A/ker κ)_M`.
//! * [`oracle`] is an independent commutative-case check: maximal ideals
//!   via idempotent lifting, the local factor `e·A`, and the comparison of
//!   `A_M` against the classical `A_m`.
//!
//! Convention used throughout: vectors are rows, maps act on the right
//! (`v ↦ v·ρ(a)`), and composition reads left to right, so structure maps
//! are genuine ring homomorphisms `ρ(ab) = ρ(a)ρ(b)`.

pub mod algebra;
pub mod cli;
pub mod completion;
pub mod field;
pub mod format;
pub mod localize;
pub mod mat;
pub mod module;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod session;
pub mod subspace;

pub use algebra::{AlgebraPresentation, IdealBasis};
pub use field::PrimeField;
pub use localize::LocalFunctionRing;
pub use mat::Mat;
pub use module::ModuleRep;
pub use session::Session;
pub use subspace::Subspace;
