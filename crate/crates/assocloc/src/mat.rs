//! Dense matrices over `F_p` and the row-reduction machinery everything
//! else is built on.
//!
//! Vectors are rows and matrices act on the right (`v ↦ v·m`), so
//! composition of actions reads left to right. Row reduction is fully
//! deterministic: pivots are always the first nonzero entry in scan order,
//! which keeps every downstream basis and report byte-stable.

use crate::field::PrimeField;
use crate::poly::Poly;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("shape mismatch: left is {lr}x{lc}, right is {rr}x{rc}")]
    ShapeMismatch { lr: usize, lc: usize, rr: usize, rc: usize },
    #[error("operands live over different prime fields ({0} vs {1})")]
    FieldMismatch(u64, u64),
    #[error("matrix is not a unit (minimal polynomial has zero constant term)")]
    NotAUnit,
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
}

/// Row-major dense matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Mat {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from explicit rows; panics on ragged input or out-of-range
    /// entries (callers validate external data before they get here).
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for &x in row {
                assert!(x < field.modulus(), "entry {x} not reduced mod {}", field.modulus());
                data.push(x);
            }
        }
        Mat { field, rows: r, cols: c, data }
    }

    pub fn from_flat(field: PrimeField, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        for &x in &data {
            assert!(x < field.modulus());
        }
        Mat { field, rows, cols, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(v < self.field.modulus());
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Row-major flattening — the coordinates of this matrix inside E_M.
    pub fn flatten(&self) -> Vec<u64> {
        self.data.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(k, &x)| x == u64::from(k / self.cols == k % self.cols))
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u64) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    /// Matrix product; panics on shape mismatch (use [`mat_mul`] for the
    /// checked variant).
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        assert_eq!(self.field, other.field);
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.at(i, j), f.mul(a, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let f = self.field;
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = f.add(out[j], f.mul(a, self.at(k, j)));
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form with deterministic first-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(src) = (r..m.rows).find(|&i| m.at(i, col) != 0) else {
                continue;
            };
            if src != r {
                for j in 0..m.cols {
                    let (a, b) = (m.at(r, j), m.at(src, j));
                    m.set(r, j, b);
                    m.set(src, j, a);
                }
            }
            let inv = f.inv(m.at(r, col)).expect("pivot is nonzero");
            for j in 0..m.cols {
                m.set(r, j, f.mul(m.at(r, j), inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let c = m.at(i, col);
                if c == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.at(i, j), f.mul(c, m.at(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
        }
        Rref { rank: pivots.len(), pivots, mat: m }
    }

    /// Basis of the right kernel `{x : m·x = 0}` (vectors of length
    /// `cols`), built from the free columns of the RREF in column order.
    pub fn right_kernel(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let rref = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in rref.pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for fc in 0..self.cols {
            if pivot_set[fc].is_some() {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[fc] = 1;
            for (pc, r) in pivot_set.iter().enumerate() {
                if let Some(r) = r {
                    v[pc] = f.neg(rref.mat.at(*r, fc));
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the left kernel `{x : x·m = 0}` (vectors of length `rows`).
    pub fn left_kernel(&self) -> Vec<Vec<u64>> {
        self.transpose().right_kernel()
    }

    /// Minimal polynomial by Krylov iteration: the least common multiple of
    /// the relation polynomials of every standard basis row under repeated
    /// right multiplication.
    pub fn min_poly(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "minimal polynomial of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut result = Poly::one(f);
        for i in 0..n {
            if result.degree() == Some(n) {
                break; // already at the maximum possible degree
            }
            let mut solver = SpanSolver::new(f, n);
            let mut v = vec![0u64; n];
            v[i] = 1;
            loop {
                match solver.insert(&v) {
                    Insertion::Added => v = self.apply_row(&v),
                    Insertion::InSpan(combo) => {
                        let d = combo.len();
                        let mut coeffs = vec![0u64; d + 1];
                        for (k, c) in combo.iter().enumerate() {
                            coeffs[k] = f.neg(*c);
                        }
                        coeffs[d] = 1;
                        result = result.lcm(&Poly::from_coeffs(f, coeffs));
                        break;
                    }
                }
            }
        }
        result
    }

    /// Evaluate a polynomial at this matrix (Horner).
    pub fn eval_poly(&self, p: &Poly) -> Mat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut acc = Mat::zeros(self.field, n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc.set(i, i, self.field.add(acc.at(i, i), c));
            }
        }
        acc
    }

    /// Two-sided inverse through the minimal polynomial: if
    /// `μ = x^d + ... + c_1·x + c_0` with `c_0 ≠ 0`, then
    /// `m^{-1} = -c_0^{-1}·(m^{d-1} + ... + c_1)`. Errors with
    /// [`LinAlgError::NotAUnit`] when the constant term vanishes; the
    /// result is verified to be a two-sided inverse before returning.
    pub fn invert_via_min_poly(&self) -> Result<Mat, LinAlgError> {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let mu = self.min_poly();
        let c0 = mu.coeff(0);
        if c0 == 0 {
            return Err(LinAlgError::NotAUnit);
        }
        let d = mu.degree().expect("minimal polynomial is nonzero");
        // Σ_{k=1}^{d} c_k m^{k-1}, scaled by -c0^{-1}
        let mut acc = Mat::zeros(f, self.rows, self.rows);
        let mut power = Mat::identity(f, self.rows);
        for k in 1..=d {
            acc = acc.add(&power.scale(mu.coeff(k)));
            if k < d {
                power = power.mul(self);
            }
        }
        let inv = acc.scale(f.neg(f.inv(c0).expect("constant term is a unit")));
        assert!(self.mul(&inv).is_identity(), "left inverse check failed");
        assert!(inv.mul(self).is_identity(), "right inverse check failed");
        Ok(inv)
    }
}

/// Checked matrix product: shape and field mismatches become errors.
pub fn mat_mul(a: &Mat, b: &Mat) -> Result<Mat, LinAlgError> {
    if a.field != b.field {
        return Err(LinAlgError::FieldMismatch(a.field.modulus(), b.field.modulus()));
    }
    if a.cols != b.rows {
        return Err(LinAlgError::ShapeMismatch { lr: a.rows, lc: a.cols, rr: b.rows, rc: b.cols });
    }
    Ok(a.mul(b))
}

/// Result of [`Mat::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Outcome of [`SpanSolver::insert`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion {
    /// The vector was independent and joined the basis.
    Added,
    /// The vector already lies in the span; the payload expresses it as a
    /// combination of the previously *added* vectors, in insertion order.
    InSpan(Vec<u64>),
}

/// Incremental row reduction that remembers how each reduced row was built
/// from the inserted vectors, so membership tests come with coordinates.
#[derive(Debug, Clone)]
pub struct SpanSolver {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u64>>,
    combos: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl SpanSolver {
    pub fn new(field: PrimeField, ambient: usize) -> Self {
        SpanSolver { field, ambient, rows: vec![], combos: vec![], pivots: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    fn reduce(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let f = self.field;
        let mut residue = v.to_vec();
        let mut combo = vec![0u64; self.rows.len()];
        for r in 0..self.rows.len() {
            let c = residue[self.pivots[r]];
            if c == 0 {
                continue;
            }
            for (j, x) in self.rows[r].iter().enumerate() {
                residue[j] = f.sub(residue[j], f.mul(c, *x));
            }
            for (k, t) in self.combos[r].iter().enumerate() {
                combo[k] = f.add(combo[k], f.mul(c, *t));
            }
        }
        (residue, combo)
    }

    /// Try to add `v` to the span.
    pub fn insert(&mut self, v: &[u64]) -> Insertion {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let (residue, combo) = self.reduce(v);
        let Some(pivot) = residue.iter().position(|&x| x != 0) else {
            return Insertion::InSpan(combo);
        };
        let inv = f.inv(residue[pivot]).expect("nonzero pivot");
        let new_row: Vec<u64> = residue.iter().map(|&x| f.mul(x, inv)).collect();
        // new_row = inv·(v - Σ combo_k·ins_k)
        let mut new_combo = vec![0u64; self.rows.len() + 1];
        for (k, c) in combo.iter().enumerate() {
            new_combo[k] = f.neg(f.mul(inv, *c));
        }
        new_combo[self.rows.len()] = inv;
        // keep the basis fully reduced: clear the new pivot column above
        for r in 0..self.rows.len() {
            let c = self.rows[r][pivot];
            if c == 0 {
                continue;
            }
            for j in 0..self.ambient {
                self.rows[r][j] = f.sub(self.rows[r][j], f.mul(c, new_row[j]));
            }
            self.combos[r].resize(self.rows.len() + 1, 0);
            for (k, t) in new_combo.iter().enumerate() {
                self.combos[r][k] = f.sub(self.combos[r][k], f.mul(c, *t));
            }
        }
        self.rows.push(new_row);
        self.combos.push(new_combo);
        self.pivots.push(pivot);
        Insertion::Added
    }

    /// Coordinates of `v` over the added vectors, or `None` if outside.
    pub fn express(&self, v: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(v.len(), self.ambient);
        let (residue, mut combo) = self.reduce(v);
        if residue.iter().any(|&x| x != 0) {
            return None;
        }
        combo.resize(self.rows.len(), 0);
        Some(combo)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.express(v).is_some()
    }
}
