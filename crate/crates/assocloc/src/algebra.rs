//! Finite-dimensional associative unital algebras over a prime field,
//! presented by structure constants, together with two-sided ideals,
//! quotient algebras, and ideal-power chains.
//!
//! Multiplication is bilinear over the basis: `e_i · e_j = Σ_k c[i][j][k] e_k`.
//! Validation checks associativity coefficient-wise and both unit axioms,
//! reporting every violation rather than the first.

use crate::field::PrimeField;
use crate::mat::Mat;
use crate::poly::Poly;
use crate::subspace::{LinMap, Subspace};
use thiserror::Error;

/// Violations and preconditions for algebra-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// Coefficient `l` of `(e_i·e_j)·e_k` and `e_i·(e_j·e_k)` differ.
    #[error("associativity fails: coefficient {3} of (e{0}·e{1})·e{2} differs from e{0}·(e{1}·e{2})")]
    NonAssociative(usize, usize, usize, usize),
    /// The declared unit does not act as identity on basis element `j`.
    #[error("unit axiom fails at basis element e{0}")]
    BadUnit(usize),
    /// A spanning set is not closed under multiplication by basis element `j`.
    #[error("span is not a two-sided ideal: not closed under e{0}")]
    NotAnIdeal(usize),
    /// The unit lies in the ideal, so the quotient would be the zero ring.
    #[error("unit element lies in the ideal; quotient would be the zero ring")]
    UnitInIdeal,
}

/// Where a linear map fails to be an algebra homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomFailure {
    /// `map(unit)` is not the target's unit.
    Unit,
    /// `map(e_i·e_j) ≠ map(e_i)·map(e_j)`.
    Pair(usize, usize),
}

/// An associative unital `F_p`-algebra given by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    field: PrimeField,
    dim: usize,
    name: String,
    basis_names: Vec<String>,
    unit: Vec<u64>,
    /// Flat `c[i][j][k]` at index `(i·dim + j)·dim + k`.
    table: Vec<u64>,
}

impl AlgebraPresentation {
    /// Build a presentation; entries are reduced mod p. Shapes must match.
    pub fn new(
        field: PrimeField,
        name: impl Into<String>,
        basis_names: Vec<String>,
        unit: Vec<u64>,
        table: &[Vec<Vec<u64>>],
    ) -> Self {
        let dim = unit.len();
        assert!(dim > 0, "algebras here are unital, so dim ≥ 1");
        assert_eq!(basis_names.len(), dim, "one name per basis element");
        assert_eq!(table.len(), dim, "table must have dim rows");
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for row in table {
            assert_eq!(row.len(), dim);
            for cell in row {
                assert_eq!(cell.len(), dim);
                flat.extend(cell.iter().map(|&x| field.reduce(x)));
            }
        }
        let unit = unit.into_iter().map(|x| field.reduce(x)).collect();
        AlgebraPresentation { field, dim, name: name.into(), basis_names, unit, table: flat }
    }

    pub fn default_basis_names(dim: usize) -> Vec<String> {
        (0..dim).map(|i| format!("e{i}")).collect()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> &[u64] {
        &self.unit
    }

    /// Structure constant `c[i][j][k]`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> u64 {
        self.table[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinate vector of `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[u64] {
        let start = (i * self.dim + j) * self.dim;
        &self.table[start..start + self.dim]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.dim];
        v[i] = 1;
        v
    }

    /// Bilinear product of two coordinate vectors.
    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        assert_eq!(a.len(), self.dim);
        assert_eq!(b.len(), self.dim);
        let f = self.field;
        let mut out = vec![0u64; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let s = f.mul(ai, bj);
                let prod = self.basis_product(i, j);
                for (k, &ck) in prod.iter().enumerate() {
                    out[k] = f.add(out[k], f.mul(s, ck));
                }
            }
        }
        out
    }

    /// Check associativity and both unit axioms, listing every violation.
    pub fn validate(&self) -> Result<(), Vec<AlgebraError>> {
        let mut errs = Vec::new();
        for j in 0..self.dim {
            let e = self.basis_vec(j);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                errs.push(AlgebraError::BadUnit(j));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..self.dim {
                    let lhs = self.mul(&ij, &self.basis_vec(k));
                    let rhs = self.mul(&self.basis_vec(i), self.basis_product(j, k));
                    for l in 0..self.dim {
                        if lhs[l] != rhs[l] {
                            errs.push(AlgebraError::NonAssociative(i, j, k, l));
                        }
                    }
                }
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }

    pub fn is_commutative(&self) -> bool {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.basis_product(i, j) != self.basis_product(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Matrix of right multiplication `x ↦ x·e_j` on row vectors.
    pub fn right_mult_matrix(&self, j: usize) -> Mat {
        let mut m = Mat::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                m.set(i, k, self.c(i, j, k));
            }
        }
        m
    }

    /// Matrix of `x ↦ x·a` on row vectors.
    pub fn element_right_mult(&self, a: &[u64]) -> Mat {
        assert_eq!(a.len(), self.dim);
        let f = self.field;
        let mut m = Mat::zeros(f, self.dim, self.dim);
        for (j, &aj) in a.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            for i in 0..self.dim {
                for k in 0..self.dim {
                    let v = f.add(m.at(i, k), f.mul(aj, self.c(i, j, k)));
                    m.set(i, k, v);
                }
            }
        }
        m
    }

    /// Matrix of `x ↦ a·x` on row vectors.
    pub fn element_left_mult(&self, a: &[u64]) -> Mat {
        assert_eq!(a.len(), self.dim);
        let f = self.field;
        let mut m = Mat::zeros(f, self.dim, self.dim);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let v = f.add(m.at(j, k), f.mul(ai, self.c(i, j, k)));
                    m.set(j, k, v);
                }
            }
        }
        m
    }

    /// Two-sided inverse of `a`, or `None` when `a` is not a unit.
    pub fn try_inverse(&self, a: &[u64]) -> Option<Vec<u64>> {
        let r = self.element_right_mult(a);
        let inv = r.invert_via_min_poly().ok()?;
        let x = inv.apply_row(&self.unit);
        debug_assert_eq!(self.mul(&x, a), self.unit);
        debug_assert_eq!(self.mul(a, &x), self.unit);
        Some(x)
    }

    pub fn is_unit(&self, a: &[u64]) -> bool {
        self.try_inverse(a).is_some()
    }

    /// Direct product with block-diagonal structure constants; basis names
    /// are prefixed with the factor index.
    pub fn direct_product(&self, other: &AlgebraPresentation) -> AlgebraPresentation {
        assert_eq!(self.field, other.field, "factors must share the field");
        let f = self.field;
        let n = self.dim + other.dim;
        let mut table = vec![vec![vec![0u64; n]; n]; n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    table[i][j][k] = self.c(i, j, k);
                }
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                for k in 0..other.dim {
                    table[self.dim + i][self.dim + j][self.dim + k] = other.c(i, j, k);
                }
            }
        }
        let mut unit = self.unit.clone();
        unit.extend_from_slice(&other.unit);
        let mut names: Vec<String> =
            self.basis_names.iter().map(|s| format!("l_{s}")).collect();
        names.extend(other.basis_names.iter().map(|s| format!("r_{s}")));
        AlgebraPresentation::new(
            f,
            format!("{}x{}", self.name, other.name),
            names,
            unit,
            &table,
        )
    }

    /// The one-dimensional algebra `F_p`.
    pub fn prime_field_algebra(field: PrimeField) -> AlgebraPresentation {
        AlgebraPresentation::new(field, format!("f{}", field.modulus()), vec!["1".into()], vec![1], &[vec![vec![1]]])
    }

    /// Full matrix algebra `M_n(F_p)` on matrix units, basis index `a·n+b`.
    pub fn matrix_algebra(field: PrimeField, n: usize) -> AlgebraPresentation {
        assert!(n >= 1);
        let dim = n * n;
        let mut table = vec![vec![vec![0u64; dim]; dim]; dim];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if b == c {
                            table[a * n + b][c * n + d][a * n + d] = 1;
                        }
                    }
                }
            }
        }
        let mut unit = vec![0u64; dim];
        for a in 0..n {
            unit[a * n + a] = 1;
        }
        let names = (0..n)
            .flat_map(|a| (0..n).map(move |b| format!("e{a}{b}")))
            .collect();
        AlgebraPresentation::new(field, format!("m{}f{}", n, field.modulus()), names, unit, &table)
    }

    /// Upper-triangular `n×n` matrices over `F_p`, basis `e_{ab}` with `a ≤ b`.
    pub fn upper_triangular(field: PrimeField, n: usize) -> AlgebraPresentation {
        assert!(n >= 1);
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a..n {
                pairs.push((a, b));
            }
        }
        let dim = pairs.len();
        let idx = |a: usize, b: usize| pairs.iter().position(|&q| q == (a, b)).unwrap();
        let mut table = vec![vec![vec![0u64; dim]; dim]; dim];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate() {
                if b == c {
                    table[i][j][idx(a, d)] = 1;
                }
            }
        }
        let mut unit = vec![0u64; dim];
        for a in 0..n {
            unit[idx(a, a)] = 1;
        }
        let names = pairs.iter().map(|&(a, b)| format!("e{a}{b}")).collect();
        AlgebraPresentation::new(field, format!("ut{}f{}", n, field.modulus()), names, unit, &table)
    }

    /// `F_p[x]/(f)` on the basis `1, x, …, x^{deg f − 1}`.
    pub fn polynomial_quotient(field: PrimeField, modulus: &Poly, name: impl Into<String>) -> AlgebraPresentation {
        let d = modulus.degree().expect("modulus must be nonzero");
        assert!(d >= 1, "modulus must have positive degree");
        let mut table = vec![vec![vec![0u64; d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                let mut coeffs = vec![0u64; i + j + 1];
                coeffs[i + j] = 1;
                let rem = Poly::from_coeffs(field, coeffs).rem(&modulus.monic());
                for (k, &ck) in rem.coeffs().iter().enumerate() {
                    table[i][j][k] = ck;
                }
            }
        }
        let mut unit = vec![0u64; d];
        unit[0] = 1;
        let names = (0..d)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x{i}"),
            })
            .collect();
        AlgebraPresentation::new(field, name, names, unit, &table)
    }

    /// Group algebra of the cyclic group `C_k`, basis `g^0, …, g^{k−1}`.
    pub fn cyclic_group_algebra(field: PrimeField, k: usize) -> AlgebraPresentation {
        assert!(k >= 1);
        let mut table = vec![vec![vec![0u64; k]; k]; k];
        for i in 0..k {
            for j in 0..k {
                table[i][j][(i + j) % k] = 1;
            }
        }
        let mut unit = vec![0u64; k];
        unit[0] = 1;
        let names = (0..k)
            .map(|i| if i == 0 { "1".to_string() } else { format!("g{i}") })
            .collect();
        AlgebraPresentation::new(field, format!("gc{}f{}", k, field.modulus()), names, unit, &table)
    }
}

/// Verify a linear map is a unital algebra homomorphism on basis pairs.
pub fn check_algebra_hom(
    src: &AlgebraPresentation,
    dst: &AlgebraPresentation,
    map: &LinMap,
) -> Result<(), HomFailure> {
    assert_eq!(map.src_dim(), src.dim());
    assert_eq!(map.dst_dim(), dst.dim());
    if map.apply(src.unit()) != dst.unit() {
        return Err(HomFailure::Unit);
    }
    for i in 0..src.dim() {
        let fi = map.apply(&src.basis_vec(i));
        for j in 0..src.dim() {
            let fj = map.apply(&src.basis_vec(j));
            let lhs = map.apply(src.basis_product(i, j));
            if lhs != dst.mul(&fi, &fj) {
                return Err(HomFailure::Pair(i, j));
            }
        }
    }
    Ok(())
}

/// A verified two-sided ideal, stored as a canonical subspace of the
/// algebra's coordinate space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealBasis {
    space: Subspace,
}

impl IdealBasis {
    /// Verify a spanning set is a two-sided ideal of `alg`.
    pub fn new(alg: &AlgebraPresentation, spanning: &[Vec<u64>]) -> Result<IdealBasis, AlgebraError> {
        let space = Subspace::from_spanning(alg.field(), alg.dim(), spanning);
        for v in space.basis() {
            for j in 0..alg.dim() {
                let e = alg.basis_vec(j);
                if !space.contains(&alg.mul(v, &e)) || !space.contains(&alg.mul(&e, v)) {
                    return Err(AlgebraError::NotAnIdeal(j));
                }
            }
        }
        Ok(IdealBasis { space })
    }

    /// The two-sided ideal generated by a spanning set: close the span
    /// under left and right multiplication by every basis element.
    pub fn generated_by(alg: &AlgebraPresentation, spanning: &[Vec<u64>]) -> IdealBasis {
        let mut space = Subspace::from_spanning(alg.field(), alg.dim(), spanning);
        loop {
            let mut rows: Vec<Vec<u64>> = space.basis().to_vec();
            for v in space.basis() {
                for j in 0..alg.dim() {
                    let e = alg.basis_vec(j);
                    rows.push(alg.mul(v, &e));
                    rows.push(alg.mul(&e, v));
                }
            }
            let bigger = Subspace::from_spanning(alg.field(), alg.dim(), &rows);
            if bigger.dim() == space.dim() {
                break;
            }
            space = bigger;
        }
        IdealBasis { space }
    }

    pub fn zero(alg: &AlgebraPresentation) -> IdealBasis {
        IdealBasis { space: Subspace::zero(alg.field(), alg.dim()) }
    }

    pub(crate) fn from_verified_subspace(space: Subspace) -> IdealBasis {
        IdealBasis { space }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.space.contains(v)
    }

    pub fn is_zero(&self) -> bool {
        self.space.dim() == 0
    }
}

/// A quotient `A/I` with its projection, a linear section, and the ideal.
#[derive(Debug, Clone)]
pub struct QuotientData {
    pub algebra: AlgebraPresentation,
    /// Surjective homomorphism `A → A/I` with kernel exactly `I`.
    pub projection: LinMap,
    /// Linear (not multiplicative) section sending class representatives back.
    pub section: LinMap,
    pub ideal: IdealBasis,
}

/// Quotient by a verified two-sided ideal. The class representatives are
/// the non-pivot coordinates of the ideal's RREF, so presentations are
/// deterministic.
pub fn quotient_algebra(
    alg: &AlgebraPresentation,
    ideal: &IdealBasis,
) -> Result<QuotientData, AlgebraError> {
    if ideal.contains(alg.unit()) {
        return Err(AlgebraError::UnitInIdeal);
    }
    let f = alg.field();
    let n = alg.dim();
    let pivots: Vec<usize> = ideal.space().basis().iter().enumerate()
        .map(|(r, _)| {
            // pivot of RREF row r = first nonzero position
            ideal.space().basis()[r].iter().position(|&x| x != 0).unwrap()
        })
        .collect();
    let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let q = free.len();
    assert_eq!(q, n - ideal.dim());

    // residue of v mod the ideal, then read off the free coordinates
    let reduce = |v: &[u64]| -> Vec<u64> {
        let mut residue = v.to_vec();
        for (row, &p) in ideal.space().basis().iter().zip(&pivots) {
            let c = residue[p];
            if c != 0 {
                for (j, &x) in row.iter().enumerate() {
                    residue[j] = f.sub(residue[j], f.mul(c, x));
                }
            }
        }
        free.iter().map(|&i| residue[i]).collect()
    };

    let mut table = vec![vec![vec![0u64; q]; q]; q];
    for (a, &i) in free.iter().enumerate() {
        for (b, &j) in free.iter().enumerate() {
            let prod = alg.mul(&alg.basis_vec(i), &alg.basis_vec(j));
            table[a][b] = reduce(&prod);
        }
    }
    let unit = reduce(alg.unit());
    let names = free.iter().map(|&i| alg.basis_names()[i].clone()).collect();
    let quotient = AlgebraPresentation::new(
        f,
        format!("{}_mod{}", alg.name(), ideal.dim()),
        names,
        unit,
        &table,
    );
    quotient.validate().expect("quotient of a valid algebra is valid");

    let proj_rows: Vec<Vec<u64>> = (0..n).map(|i| reduce(&alg.basis_vec(i))).collect();
    let projection = LinMap::from_rows(f, &proj_rows);
    let sec_rows: Vec<Vec<u64>> = free.iter().map(|&i| alg.basis_vec(i)).collect();
    let section = LinMap::from_rows(f, &sec_rows);

    assert!(check_algebra_hom(alg, &quotient, &projection).is_ok(), "projection must be a homomorphism");
    assert!(projection.is_surjective());
    let ker = projection.kernel();
    assert_eq!(ker.dim(), ideal.dim());
    assert!(ker.basis().iter().all(|v| ideal.contains(v)), "projection kernel must be the ideal");

    Ok(QuotientData { algebra: quotient, projection, section, ideal: ideal.clone() })
}

/// Span of all products `x·y` with `x ∈ I`, `y ∈ J` (a two-sided ideal).
pub fn ideal_product(alg: &AlgebraPresentation, i: &IdealBasis, j: &IdealBasis) -> IdealBasis {
    let mut rows = Vec::new();
    for x in i.space().basis() {
        for y in j.space().basis() {
            rows.push(alg.mul(x, y));
        }
    }
    let space = Subspace::from_spanning(alg.field(), alg.dim(), &rows);
    let out = IdealBasis::from_verified_subspace(space);
    debug_assert!(IdealBasis::new(alg, out.space().basis()).is_ok());
    out
}

/// The chain `I ⊇ I² ⊇ …` up to the first stabilizing power: returns
/// `[I^1, …, I^N]` and `N`, the least exponent with `I^N = I^{N+1}`.
pub fn ideal_power_chain(alg: &AlgebraPresentation, ideal: &IdealBasis) -> (Vec<IdealBasis>, usize) {
    let mut chain = vec![ideal.clone()];
    loop {
        let last = chain.last().unwrap();
        let next = ideal_product(alg, last, ideal);
        if next.space() == last.space() {
            break;
        }
        chain.push(next);
        assert!(chain.len() <= alg.dim() + 1, "ideal powers must stabilize within dim+1 steps");
    }
    let n = chain.len();
    (chain, n)
}
