//! Dense univariate polynomials over `F_p`.
//!
//! Supplies the arithmetic behind minimal polynomials (multiplication,
//! division, gcd/lcm) and a complete factorization pipeline — squarefree
//! radical, distinct-degree splitting, equal-degree splitting — used by the
//! Meataxe to certify simplicity. The equal-degree splitter enumerates
//! candidate polynomials deterministically instead of sampling, so factor
//! lists do not depend on any PRNG seed.

use crate::field::PrimeField;

/// Polynomial with coefficients in `F_p`, lowest degree first.
/// No trailing zeros are stored; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<u64>,
    field: PrimeField,
}

impl Poly {
    pub fn from_coeffs(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in &coeffs {
            debug_assert!(*c < field.modulus());
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs, field }
    }

    pub fn zero(field: PrimeField) -> Self {
        Poly { coeffs: vec![], field }
    }

    pub fn one(field: PrimeField) -> Self {
        Poly { coeffs: vec![1], field }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Poly::from_coeffs(field, vec![c])
    }

    pub fn x(field: PrimeField) -> Self {
        Poly { coeffs: vec![0, 1], field }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|a| f.mul(*a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(*a, *b));
            }
        }
        Poly::from_coeffs(f, coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divmod(&self, divisor: &Poly) -> (Poly, Poly) {
        let f = self.field;
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(f), self.clone());
        }
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(c, *b));
            }
        }
        (Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divmod(divisor).1
    }

    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divmod(divisor);
        debug_assert!(r.is_zero(), "division was not exact");
        q
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let g = self.gcd(other);
        self.mul(other).div_exact(&g).monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        if self.coeffs.len() <= 1 {
            return Poly::zero(f);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| f.mul(f.reduce(i as u64 + 1), *c))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), *c);
        }
        acc
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// p-th root of a polynomial whose exponents are all multiples of p
    /// (over the prime field the Frobenius fixes coefficients).
    fn pth_root(&self) -> Poly {
        let p = self.field.modulus() as usize;
        let mut coeffs = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                coeffs.push(*c);
            } else {
                debug_assert_eq!(*c, 0, "pth_root on a polynomial that is not a p-th power");
            }
        }
        Poly::from_coeffs(self.field, coeffs)
    }

    /// Monic product of the distinct irreducible factors (the radical).
    pub fn radical_part(&self) -> Poly {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.degree() == Some(0) {
            return f;
        }
        let d = f.derivative();
        if d.is_zero() {
            return f.pth_root().radical_part();
        }
        let g = f.gcd(&d);
        if g.degree() == Some(0) {
            return f;
        }
        // w carries each factor whose multiplicity is coprime to p, once.
        let w = f.div_exact(&g).monic();
        // Strip those factors out of g; what survives is a p-th power.
        let mut c = g;
        loop {
            let e = c.gcd(&w);
            if e.degree() == Some(0) {
                break;
            }
            c = c.div_exact(&e).monic();
        }
        if c.degree() == Some(0) {
            w
        } else {
            w.mul(&c.pth_root().radical_part()).monic()
        }
    }

    /// Distinct-degree splitting of a monic squarefree polynomial:
    /// buckets `(product of irreducible factors of degree d, d)`.
    fn distinct_degree_split(&self) -> Vec<(Poly, usize)> {
        let p = self.field.modulus();
        let mut f = self.monic();
        let mut out = Vec::new();
        let mut h = Poly::x(self.field).rem(&f);
        let x = Poly::x(self.field);
        let mut d = 0usize;
        while f.degree().unwrap_or(0) >= 1 {
            d += 1;
            if 2 * d > f.degree().unwrap() {
                break;
            }
            h = h.pow_mod(p, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), d));
                f = f.div_exact(&g).monic();
                h = h.rem(&f);
            }
        }
        if f.degree().unwrap_or(0) > 0 {
            let d = f.degree().unwrap();
            out.push((f, d));
        }
        out
    }

    /// Equal-degree splitting: `self` is monic squarefree with all
    /// irreducible factors of degree `d`. Splits by gcd against shifted
    /// trace maps of deterministically enumerated candidates.
    fn equal_degree_split(&self, d: usize) -> Vec<Poly> {
        let n = self.degree().expect("nonzero polynomial");
        if n == d {
            return vec![self.monic()];
        }
        let p = self.field.modulus();
        for g in PolyEnumerator::new(self.field, n) {
            // Trace map T(g) = g + g^p + ... + g^(p^(d-1)) mod self.
            let mut t = g.rem(self);
            let mut gp = t.clone();
            for _ in 1..d {
                gp = gp.pow_mod(p, self);
                t = t.add(&gp);
            }
            // T(g) is a constant modulo each irreducible factor; any value
            // split separates factors with different trace constants.
            for c in 0..p {
                let h = self.gcd(&t.sub(&Poly::constant(self.field, c)));
                let hd = h.degree().unwrap_or(0);
                if hd > 0 && hd < n {
                    let rest = self.div_exact(&h).monic();
                    let mut out = h.equal_degree_split(d);
                    out.extend(rest.equal_degree_split(d));
                    return out;
                }
            }
        }
        unreachable!("a separating polynomial of degree < deg(f) always exists");
    }

    /// The distinct monic irreducible factors, sorted by degree and then
    /// by coefficient vector — a deterministic, seed-independent order.
    pub fn distinct_irreducible_factors(&self) -> Vec<Poly> {
        assert!(!self.is_zero(), "factoring the zero polynomial");
        if self.degree() == Some(0) {
            return vec![];
        }
        let rad = self.radical_part();
        let mut factors = Vec::new();
        for (bucket, d) in rad.distinct_degree_split() {
            factors.extend(bucket.equal_degree_split(d));
        }
        factors.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs.cmp(&b.coeffs))
        });
        factors
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(d) => {
                let factors = self.distinct_irreducible_factors();
                factors.len() == 1 && factors[0].degree() == Some(d)
            }
        }
    }
}

/// Enumerates nonconstant polynomials by ascending degree, then by
/// coefficient odometer; degrees stay below `max_degree`.
struct PolyEnumerator {
    field: PrimeField,
    max_degree: usize,
    degree: usize,
    // counter over the lower coefficients plus (leading - 1)
    state: Vec<u64>,
    done: bool,
}

impl PolyEnumerator {
    fn new(field: PrimeField, max_degree: usize) -> Self {
        PolyEnumerator {
            field,
            max_degree,
            degree: 1,
            state: vec![0, 0],
            done: max_degree < 2,
        }
    }
}

impl Iterator for PolyEnumerator {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.done {
            return None;
        }
        let p = self.field.modulus();
        let mut coeffs = self.state.clone();
        let lead = coeffs.len() - 1;
        coeffs[lead] += 1; // leading coefficient is stored offset by one
        let item = Poly::from_coeffs(self.field, coeffs);
        // advance the odometer: lower digits run over [0,p), leading over [0,p-1)
        for (i, digit) in self.state.iter_mut().enumerate() {
            let limit = if i == lead { p - 1 } else { p };
            *digit += 1;
            if *digit < limit {
                return Some(item);
            }
            *digit = 0;
        }
        self.degree += 1;
        if self.degree >= self.max_degree {
            self.done = true;
        } else {
            self.state = vec![0; self.degree + 1];
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn poly(field: PrimeField, coeffs: &[u64]) -> Poly {
        Poly::from_coeffs(field, coeffs.to_vec())
    }

    #[test]
    fn mul_and_divmod_round_trip() {
        // (x^2 + x + 1)(x + 1) = x^3 + 1 over F_2
        let a = poly(f2(), &[1, 1, 1]);
        let b = poly(f2(), &[1, 1]);
        let prod = a.mul(&b);
        assert_eq!(prod, poly(f2(), &[1, 0, 0, 1]));
        let (q, r) = prod.divmod(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_of_shared_factor() {
        // x^3 + 1 = (x+1)(x^2+x+1), x^2 + 1 = (x+1)^2 over F_2
        let a = poly(f2(), &[1, 0, 0, 1]);
        let b = poly(f2(), &[1, 0, 1]);
        assert_eq!(a.gcd(&b), poly(f2(), &[1, 1]));
        let l = a.lcm(&b);
        // lcm = (x+1)^2 (x^2+x+1) = (x^2+1)(x^2+x+1) = x^4 + x^3 + x + 1
        assert_eq!(l, poly(f2(), &[1, 1, 0, 1, 1]));
    }

    #[test]
    fn radical_strips_multiplicity() {
        // (x+1)^2 (x^2+x+1) over F_2 -> (x+1)(x^2+x+1) = x^3 + 1
        let sq = poly(f2(), &[1, 1]).mul(&poly(f2(), &[1, 1]));
        let f = sq.mul(&poly(f2(), &[1, 1, 1]));
        assert_eq!(f.radical_part(), poly(f2(), &[1, 0, 0, 1]));
    }

    #[test]
    fn radical_handles_pth_powers() {
        // (x+1)^6 = ((x+1)^3)^2 over F_3 has zero derivative at the top level
        let lin = poly(f3(), &[1, 1]);
        let mut f = Poly::one(f3());
        for _ in 0..6 {
            f = f.mul(&lin);
        }
        assert_eq!(f.radical_part(), lin);
    }

    #[test]
    fn factor_mixed_degrees_f2() {
        // x^4 + x^3 + x + 1 = (x+1)^2 (x^2+x+1)
        let f = poly(f2(), &[1, 1, 0, 1, 1]);
        let factors = f.distinct_irreducible_factors();
        assert_eq!(factors, vec![poly(f2(), &[1, 1]), poly(f2(), &[1, 1, 1])]);
    }

    #[test]
    fn factor_split_linears_f5() {
        // x^4 - 1 splits into (x-1)(x-2)(x-3)(x-4) over F_5
        let f5 = PrimeField::new(5).unwrap();
        let f = poly(f5, &[4, 0, 0, 0, 1]);
        let factors = f.distinct_irreducible_factors();
        assert_eq!(
            factors,
            vec![
                poly(f5, &[1, 1]),
                poly(f5, &[2, 1]),
                poly(f5, &[3, 1]),
                poly(f5, &[4, 1])
            ]
        );
    }

    #[test]
    fn irreducibles_recognized() {
        assert!(poly(f2(), &[1, 1, 1]).is_irreducible()); // x^2+x+1
        assert!(poly(f3(), &[1, 0, 1]).is_irreducible()); // x^2+1 over F_3
        assert!(!poly(f2(), &[1, 0, 1]).is_irreducible()); // (x+1)^2
        assert!(!poly(f2(), &[1]).is_irreducible()); // constant
    }

    #[test]
    fn eval_and_derivative() {
        let f = poly(f3(), &[2, 0, 1]); // x^2 + 2
        assert_eq!(f.eval(0), 2);
        assert_eq!(f.eval(1), 0);
        assert_eq!(f.eval(2), 0);
        assert_eq!(f.derivative(), poly(f3(), &[0, 2]));
    }
}
