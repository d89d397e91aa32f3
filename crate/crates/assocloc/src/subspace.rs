//! Subspaces of `F_p^n` in canonical reduced-echelon form, linear maps
//! between coordinate spaces, and the shared linear-system solvers.
//!
//! A [`Subspace`] always stores its basis as RREF rows, so structural
//! equality is exactly equality of subspaces and every basis that reaches
//! a report is deterministic.

use crate::field::PrimeField;
use crate::mat::{LinAlgError, Mat, SpanSolver};

/// A subspace of `F_p^ambient`, basis kept in RREF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace { field, ambient, basis: vec![], pivots: vec![] }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace::from_spanning(field, ambient, &(0..ambient)
            .map(|i| {
                let mut v = vec![0u64; ambient];
                v[i] = 1;
                v
            })
            .collect::<Vec<_>>())
    }

    /// Canonicalize a spanning set (zero rows are fine and dropped).
    pub fn from_spanning(field: PrimeField, ambient: usize, rows: &[Vec<u64>]) -> Self {
        for row in rows {
            assert_eq!(row.len(), ambient, "spanning row has wrong length");
        }
        if rows.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let rref = Mat::from_rows(field, rows).rref();
        let basis = (0..rref.rank).map(|i| rref.mat.row(i).to_vec()).collect();
        Subspace { field, ambient, basis, pivots: rref.pivots }
    }

    pub fn from_mat_rows(m: &Mat) -> Self {
        let rows: Vec<Vec<u64>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        Subspace::from_spanning(m.field(), m.cols(), &rows)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn basis_mat(&self) -> Mat {
        if self.basis.is_empty() {
            Mat::zeros(self.field, 0, self.ambient)
        } else {
            Mat::from_rows(self.field, &self.basis)
        }
    }

    /// Coordinates of `v` over the RREF basis, or `None` if outside.
    /// Cheap because each basis row owns its pivot column exclusively.
    pub fn coords_of(&self, v: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let mut residue = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = residue[p];
            coords.push(c);
            if c != 0 {
                for (j, x) in row.iter().enumerate() {
                    residue[j] = f.sub(residue[j], f.mul(c, *x));
                }
            }
        }
        if residue.iter().all(|&x| x == 0) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.coords_of(v).is_some()
    }

    pub fn linear_combination(&self, coords: &[u64]) -> Vec<u64> {
        assert_eq!(coords.len(), self.basis.len());
        let f = self.field;
        let mut out = vec![0u64; self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            if *c == 0 {
                continue;
            }
            for (j, x) in row.iter().enumerate() {
                out[j] = f.add(out[j], f.mul(*c, *x));
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|row| other.contains(row))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Subspace::from_spanning(self.field, self.ambient, &rows))
    }

    /// Intersection via the kernel of the stacked transposed bases: a pair
    /// `(a, b)` with `a·U = b·V` is a kernel vector of `[Uᵀ | -Vᵀ]`, and
    /// each such pair contributes the intersection element `a·U`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::AmbientMismatch(self.ambient, other.ambient));
        }
        let f = self.field;
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Ok(Subspace::zero(f, self.ambient));
        }
        let mut stacked = Mat::zeros(f, self.ambient, k + l);
        for (r, row) in self.basis.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                stacked.set(j, r, x);
            }
        }
        for (r, row) in other.basis.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                stacked.set(j, k + r, f.neg(x));
            }
        }
        let rows: Vec<Vec<u64>> = stacked
            .right_kernel()
            .into_iter()
            .map(|ab| {
                let mut v = vec![0u64; self.ambient];
                for (r, row) in self.basis.iter().enumerate() {
                    let c = ab[r];
                    if c == 0 {
                        continue;
                    }
                    for (j, &x) in row.iter().enumerate() {
                        v[j] = f.add(v[j], f.mul(c, x));
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::from_spanning(f, self.ambient, &rows))
    }
}

/// Checked intersection of two subspaces of the same ambient space.
pub fn subspace_intersect(u: &Subspace, v: &Subspace) -> Result<Subspace, LinAlgError> {
    u.intersect(v)
}

/// A linear map `F_p^src → F_p^dst`; row `i` of the matrix is the image of
/// the `i`-th source basis vector, and application is `v ↦ v·matrix`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    matrix: Mat,
}

impl LinMap {
    pub fn new(matrix: Mat) -> Self {
        LinMap { matrix }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        LinMap { matrix: Mat::identity(field, n) }
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Self {
        LinMap { matrix: Mat::from_rows(field, rows) }
    }

    /// Like [`LinMap::from_rows`] but with explicit dimensions, so maps
    /// from or into the zero space are representable.
    pub fn from_rows_with_shape(
        field: PrimeField,
        src: usize,
        dst: usize,
        rows: &[Vec<u64>],
    ) -> Self {
        assert_eq!(rows.len(), src, "one row per source basis vector");
        let mut m = Mat::zeros(field, src, dst);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), dst);
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        LinMap { matrix: m }
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    pub fn src_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn dst_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.matrix.apply_row(v)
    }

    /// `self` followed by `then` (left-to-right composition).
    pub fn compose(&self, then: &LinMap) -> LinMap {
        LinMap { matrix: self.matrix.mul(&then.matrix) }
    }

    pub fn kernel(&self) -> Subspace {
        let rows = self.matrix.left_kernel();
        Subspace::from_spanning(self.field(), self.src_dim(), &rows)
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_mat_rows(&self.matrix)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rref().rank
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.src_dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.dst_dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.src_dim() == self.dst_dim() && self.rank() == self.src_dim()
    }

    /// Some vector mapping to `target`, or `None` if outside the image.
    pub fn preimage(&self, target: &[u64]) -> Option<Vec<u64>> {
        let f = self.field();
        let mut solver = SpanSolver::new(f, self.dst_dim());
        let mut added_idx = Vec::new();
        for i in 0..self.src_dim() {
            if let crate::mat::Insertion::Added = solver.insert(self.matrix.row(i)) {
                added_idx.push(i);
            }
        }
        let combo = solver.express(target)?;
        let mut out = vec![0u64; self.src_dim()];
        for (k, &i) in added_idx.iter().enumerate() {
            out[i] = combo[k];
        }
        Some(out)
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<LinMap> {
        if !self.is_bijective() {
            return None;
        }
        let n = self.dst_dim();
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut e = vec![0u64; n];
                e[i] = 1;
                self.preimage(&e).expect("bijective map misses a basis vector")
            })
            .collect();
        Some(LinMap::from_rows(self.field(), &rows))
    }
}

/// Solve the two-sided intertwining system: the space of `r×c` matrices
/// `F` with `X_t·F = F·Y_t` for every constraint pair `(X_t, Y_t)`.
///
/// With `X_t = Y_t = ρ(e_t)` this is the commutant of a representation;
/// with `X_t = ρ_M(e_t)`, `Y_t = ρ_N(e_t)` it is the space of module
/// homomorphisms `M → N`. An empty constraint list leaves everything
/// unconstrained and returns the full space. Solutions are flattened
/// row-major as a subspace of `F_p^{r·c}`.
pub fn solve_commutant_system(
    field: PrimeField,
    r: usize,
    c: usize,
    constraints: &[(Mat, Mat)],
) -> Result<Subspace, LinAlgError> {
    for (x, y) in constraints {
        if x.field() != field {
            return Err(LinAlgError::FieldMismatch(field.modulus(), x.field().modulus()));
        }
        if y.field() != field {
            return Err(LinAlgError::FieldMismatch(field.modulus(), y.field().modulus()));
        }
        if x.rows() != r || x.cols() != r || y.rows() != c || y.cols() != c {
            return Err(LinAlgError::ShapeMismatch { lr: x.rows(), lc: x.cols(), rr: y.rows(), rc: y.cols() });
        }
    }
    let unknowns = r * c;
    if constraints.is_empty() {
        return Ok(Subspace::full(field, unknowns));
    }
    let mut system = Mat::zeros(field, constraints.len() * unknowns, unknowns);
    let mut eq = 0usize;
    for (x, y) in constraints {
        for i in 0..r {
            for j in 0..c {
                // Σ_k X[i,k]·F[k,j] - Σ_l F[i,l]·Y[l,j] = 0
                for k in 0..r {
                    let idx = k * c + j;
                    let v = field.add(system.at(eq, idx), x.at(i, k));
                    system.set(eq, idx, v);
                }
                for l in 0..c {
                    let idx = i * c + l;
                    let v = field.sub(system.at(eq, idx), y.at(l, j));
                    system.set(eq, idx, v);
                }
                eq += 1;
            }
        }
    }
    let kernel = system.right_kernel();
    Ok(Subspace::from_spanning(field, unknowns, &kernel))
}
