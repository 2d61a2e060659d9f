//! Dense univariate polynomials over a prime field F_p, p < 2^32.
//!
//! Doubles as the scalar type for the generic normal-form engine in the
//! equicharacteristic case (F_p[t] is Euclidean). The characteristic is
//! carried in each element; `p = 0` marks the polymorphic zero/one
//! produced by `ExactScalar::zero/one` before any arithmetic binds them.

use crate::exact_linalg::ExactScalar;

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse mod a prime p.
pub fn invmod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "zero has no inverse");
    powmod(a, p - 2, p)
}

#[derive(Clone, Eq)]
pub struct FpPoly {
    /// Characteristic; 0 = not yet bound to a field.
    pub p: u64,
    /// Coefficients, constant term first, no trailing zeros.
    pub coeffs: Vec<u64>,
}

impl PartialEq for FpPoly {
    fn eq(&self, other: &Self) -> bool {
        // The characteristic is determined by context; compatible contexts
        // always agree, so comparing coefficient vectors suffices.
        self.coeffs == other.coeffs
    }
}

impl std::hash::Hash for FpPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl std::fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

fn bind(p1: u64, p2: u64) -> u64 {
    if p1 == 0 {
        p2
    } else {
        debug_assert!(p2 == 0 || p1 == p2, "mixed characteristics {p1} vs {p2}");
        p1
    }
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        if p > 0 {
            for c in coeffs.iter_mut() {
                *c %= p;
            }
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero_p(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    /// The monomial x^k.
    pub fn monomial(p: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Self::new(p, coeffs)
    }

    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        let pe = p as i64;
        Self::new(p, coeffs.iter().map(|&c| c.rem_euclid(pe) as u64).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x, p) + c) % p;
        }
        acc
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::new(p, self.coeffs.iter().map(|&a| mulmod(a, c % p, p)).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero_p(self.p);
        }
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, (i as u64) % p, p))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        self.scale(invmod(self.leading(), self.p))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.coeffs.is_empty() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.coeffs.is_empty() {
            a
        } else {
            a.monic()
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let p = bind(self.p, divisor.p);
        assert!(!divisor.coeffs.is_empty(), "division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (Self::zero_p(p), FpPoly::new(p, rem));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        let linv = invmod(divisor.leading(), p);
        for k in (0..quot.len()).rev() {
            let c = mulmod(rem[k + dd], linv, p);
            quot[k] = c;
            if c != 0 {
                for (i, &dc) in divisor.coeffs.iter().enumerate() {
                    let sub = mulmod(c, dc, p);
                    rem[k + i] = (rem[k + i] + p - sub) % p;
                }
            }
        }
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    /// x^(p^k)-style Frobenius tower step: self^q mod m.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let p = bind(self.p, modulus.p);
        let mut base = self.div_rem(modulus).1;
        let mut acc = Self::constant(p, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).div_rem(modulus).1;
            }
            base = base.mul(&base).div_rem(modulus).1;
            exp >>= 1;
        }
        acc
    }

    /// Order of vanishing at t = 0; `None` for the zero polynomial.
    pub fn t_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn display(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = match i {
                0 => format!("{c}"),
                1 if c == 1 => var.to_string(),
                1 => format!("{c}*{var}"),
                _ if c == 1 => format!("{var}^{i}"),
                _ => format!("{c}*{var}^{i}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }

    /// Squarefree decomposition in characteristic p: pairwise-coprime monic
    /// squarefree parts with multiplicities, product over part^mult equal to
    /// the monic associate of self.
    pub fn squarefree_decomposition(&self) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        squarefree_rec(&self.monic(), 1, &mut out);
        out.sort_by_key(|(f, m)| (*m, f.coeffs.clone()));
        out
    }

    /// Given a monic squarefree polynomial, the multiset of degrees of its
    /// irreducible factors, as (degree, count) pairs. Distinct-degree
    /// factorization via the Frobenius tower x^(p^d).
    pub fn distinct_degree_counts(&self) -> Vec<(usize, usize)> {
        let p = self.p;
        let mut f = self.monic();
        let mut counts: Vec<(usize, usize)> = Vec::new();
        let x = FpPoly::monomial(p, 1);
        // h = x^(p^d) mod f, maintained incrementally.
        let mut h = x.div_rem(&f).1;
        let mut d = 0usize;
        while f.degree().unwrap_or(0) >= 1 {
            d += 1;
            if 2 * d > f.degree().unwrap() {
                counts.push((f.degree().unwrap(), 1));
                break;
            }
            h = h.pow_mod(p, &f);
            let diff = h.sub(&x);
            let g = f.gcd(&diff);
            if let Some(dg) = g.degree() {
                if dg > 0 {
                    counts.push((d, dg / d));
                    f = f.div_rem(&g).0;
                    h = h.div_rem(&f).1;
                }
            }
        }
        counts
    }
}

fn squarefree_rec(f: &FpPoly, mult: usize, out: &mut Vec<(FpPoly, usize)>) {
    let p = f.p;
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let fp = f.derivative();
    if fp.coeffs.is_empty() {
        // f = g(x^p); take the p-th root (Frobenius fixes F_p).
        let step = p as usize;
        let root = FpPoly::new(p, f.coeffs.iter().step_by(step).copied().collect());
        squarefree_rec(&root, mult * step, out);
        return;
    }
    let mut c = f.gcd(&fp);
    let mut w = f.div_rem(&c).0;
    let mut i = 1usize;
    while w.degree().unwrap_or(0) >= 1 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree().unwrap_or(0) >= 1 {
            out.push((z.monic(), mult * i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.degree().unwrap_or(0) >= 1 {
        let step = p as usize;
        let root = FpPoly::new(p, c.coeffs.iter().step_by(step).copied().collect());
        squarefree_rec(&root, mult * step, out);
    }
}

impl ExactScalar for FpPoly {
    fn zero() -> Self {
        FpPoly::zero_p(0)
    }
    fn one() -> Self {
        FpPoly {
            p: 0,
            coeffs: vec![1],
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let p = bind(self.p, other.p);
        if self.coeffs.is_empty() {
            return FpPoly::new(p, other.coeffs.clone());
        }
        if other.coeffs.is_empty() {
            return FpPoly::new(p, self.coeffs.clone());
        }
        assert!(p > 0, "cannot add two unbound constants");
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % p)
            .collect();
        FpPoly::new(p, coeffs)
    }
    fn sub(&self, other: &Self) -> Self {
        if self == other {
            return FpPoly::zero_p(bind(self.p, other.p));
        }
        self.add(&other.neg())
    }
    fn neg(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let p = self.p;
        assert!(p > 0, "cannot negate an unbound constant");
        FpPoly::new(p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        let p = bind(self.p, other.p);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return FpPoly::zero_p(p);
        }
        if p == 0 {
            // Only 1*1 can reach here.
            return FpPoly { p, coeffs: vec![1] };
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + mulmod(a, b, p)) % p;
            }
        }
        FpPoly::new(p, coeffs)
    }
    fn div_rem_floor(&self, divisor: &Self) -> (Self, Self) {
        self.div_rem(divisor)
    }
    fn size_lt(&self, other: &Self) -> bool {
        let da = self.coeffs.len();
        let db = other.coeffs.len();
        da < db
    }
    fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }
    fn canonical_associate(&self) -> (Self, Self) {
        if self.coeffs.is_empty() {
            return (self.clone(), FpPoly::one());
        }
        if self.p == 0 {
            return (self.clone(), FpPoly::one());
        }
        let u = invmod(self.leading(), self.p);
        (self.scale(u), FpPoly::constant(self.p, u))
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.coeffs.is_empty() {
            return None;
        }
        if self.coeffs.is_empty() {
            return Some(FpPoly::zero_p(bind(self.p, divisor.p)));
        }
        if divisor.p == 0 {
            // Dividing by the unbound 1.
            return Some(self.clone());
        }
        let me = if self.p == 0 {
            FpPoly::new(divisor.p, self.coeffs.clone())
        } else {
            self.clone()
        };
        let (q, r) = me.div_rem(divisor);
        if r.coeffs.is_empty() {
            Some(q)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, coeffs: &[i64]) -> FpPoly {
        FpPoly::from_signed(p, coeffs)
    }

    #[test]
    fn div_rem_basic() {
        // x^2 + 1 = (x + 2)(x + 3) mod 5
        let f = poly(5, &[1, 0, 1]);
        let g = poly(5, &[2, 1]);
        let (q, r) = f.div_rem(&g);
        assert!(r.coeffs.is_empty());
        assert_eq!(q, poly(5, &[3, 1]));
    }

    #[test]
    fn gcd_and_monic() {
        let f = poly(7, &[1, 0, 1]).mul(&poly(7, &[3, 1]));
        let g = poly(7, &[3, 1]).mul(&poly(7, &[1, 1]));
        assert_eq!(f.gcd(&g), poly(7, &[3, 1]));
    }

    #[test]
    fn squarefree_char_p() {
        // x^2 + 1 = (x+1)^2 mod 2; derivative vanishes, p-th root path.
        let f = poly(2, &[1, 0, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(poly(2, &[1, 1]), 2)]);

        // (x-1)^2 (x+1) mod 5 by the ordinary path.
        let f = poly(5, &[-1, 1]).mul(&poly(5, &[-1, 1])).mul(&poly(5, &[1, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(poly(5, &[1, 1]), 1), (poly(5, &[-1, 1]), 2)]);
    }

    #[test]
    fn ddf_degrees() {
        // Phi_5 = x^4+x^3+x^2+x+1 irreducible mod 2 (order of 2 mod 5 is 4).
        let phi5 = poly(2, &[1, 1, 1, 1, 1]);
        assert_eq!(phi5.distinct_degree_counts(), vec![(4, 1)]);
        // Phi_3 = x^2+x+1 = (x-2)(x-4) mod 7.
        let phi3 = poly(7, &[1, 1, 1]);
        assert_eq!(phi3.distinct_degree_counts(), vec![(1, 2)]);
    }

    #[test]
    fn t_valuation() {
        assert_eq!(poly(3, &[0, 0, 2]).t_valuation(), Some(2));
        assert_eq!(poly(3, &[1]).t_valuation(), Some(0));
        assert_eq!(FpPoly::zero_p(3).t_valuation(), None);
    }

    #[test]
    fn exact_scalar_roundtrip() {
        // The generic engine runs over F_p[t]: Smith form of a small matrix.
        use crate::exact_linalg::{smith_normal_form, Matrix};
        let t = FpPoly::monomial(3, 1);
        let one = FpPoly::constant(3, 1);
        let a = Matrix::from_rows(vec![
            vec![t.clone(), one.clone()],
            vec![FpPoly::zero_p(3), t.clone()],
        ]);
        let s = smith_normal_form(&a);
        let f = s.invariant_factors();
        assert_eq!(f.len(), 2);
        // det = t^2, d1 = 1 (the off-diagonal 1 forces a unit), d2 = t^2.
        assert!(f[0].is_unit());
        assert_eq!(f[1], FpPoly::monomial(3, 2));
    }
}
