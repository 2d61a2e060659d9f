//! Multivariate polynomials over a [`CoeffRing`], on the monomial basis
//! of A[X_1, ..., X_n].
//!
//! Monomials of a fixed degree are ordered lexicographically with X_1
//! greatest (X_1^d first); all coordinate vectors in the crate use that
//! order.

use crate::coeff_rings::{CoeffRing, RingElement};
use crate::ring_matrix::RingMatrix;
use std::collections::BTreeMap;

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u32>;

/// All exponent vectors of total degree `d` in `n` variables, in
/// descending lexicographic order (X_1^d first).
pub fn monomials(n: usize, d: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(n: usize, pos: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if pos == n - 1 {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(n, pos + 1, left - e, cur, out);
        }
    }
    if n == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(n, 0, d, &mut cur, &mut out);
    out
}

/// Rank of the degree-d piece: C(n+d-1, d).
pub fn monomial_count(n: usize, d: u32) -> usize {
    monomials(n, d).len()
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Exponents, RingElement>,
}

impl std::fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MultiPoly({} vars, {} terms)",
            self.nvars,
            self.terms.len()
        )
    }
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &CoeffRing, nvars: usize, c: RingElement) -> Self {
        let mut p = Self::zero(nvars);
        if !ring.is_zero(&c) {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(ring: &CoeffRing, nvars: usize) -> Self {
        Self::constant(ring, nvars, ring.one())
    }

    /// X_i (0-based).
    pub fn variable(ring: &CoeffRing, nvars: usize, i: usize) -> Self {
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        Self::monomial(ring, nvars, e, ring.one())
    }

    pub fn monomial(ring: &CoeffRing, nvars: usize, exps: Exponents, c: RingElement) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !ring.is_zero(&c) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `Some(d)` if nonzero and homogeneous of degree d.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn add(&self, ring: &CoeffRing, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let v = match terms.remove(e) {
                Some(cur) => ring.add(&cur, c),
                None => c.clone(),
            };
            if !ring.is_zero(&v) {
                terms.insert(e.clone(), v);
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn neg(&self, ring: &CoeffRing) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), ring.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &CoeffRing, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn scalar_mul(&self, ring: &CoeffRing, c: &RingElement) -> Self {
        if ring.is_zero(c) {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), ring.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul(&self, ring: &CoeffRing, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out: BTreeMap<Exponents, RingElement> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ring.mul(ca, cb);
                let v = match out.remove(&e) {
                    Some(cur) => ring.add(&cur, &c),
                    None => c,
                };
                if !ring.is_zero(&v) {
                    out.insert(e, v);
                }
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn pow(&self, ring: &CoeffRing, e: u32) -> Self {
        let mut acc = Self::one(ring, self.nvars);
        for _ in 0..e {
            acc = acc.mul(ring, self);
        }
        acc
    }

    /// Action of a group element with the column convention
    /// g·X_j = Σ_i g_{ij} X_i, extended multiplicatively.
    pub fn apply_matrix(&self, ring: &CoeffRing, g: &RingMatrix) -> Self {
        assert_eq!(g.rows(), self.nvars);
        assert_eq!(g.cols(), self.nvars);
        // Images of the variables.
        let images: Vec<MultiPoly> = (0..self.nvars)
            .map(|j| {
                let mut p = Self::zero(self.nvars);
                for i in 0..self.nvars {
                    let c = g.get(i, j);
                    if !ring.is_zero(c) {
                        p = p.add(ring, &Self::monomial(ring, self.nvars, unit_exp(self.nvars, i), c.clone()));
                    }
                }
                p
            })
            .collect();
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(ring, self.nvars, c.clone());
            for (j, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(ring, &images[j].pow(ring, exp));
                }
            }
            out = out.add(ring, &term);
        }
        out
    }

    /// Coordinates in the degree-d monomial basis; the polynomial must be
    /// homogeneous of degree d (or zero).
    pub fn coeff_vector(&self, ring: &CoeffRing, d: u32) -> Vec<RingElement> {
        let mons = monomials(self.nvars, d);
        let index: BTreeMap<&Exponents, usize> =
            mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![ring.zero(); mons.len()];
        for (e, c) in &self.terms {
            let i = *index
                .get(e)
                .unwrap_or_else(|| panic!("term of degree != {d}"));
            v[i] = c.clone();
        }
        v
    }

    pub fn from_coeff_vector(
        ring: &CoeffRing,
        nvars: usize,
        d: u32,
        coords: &[RingElement],
    ) -> Self {
        let mons = monomials(nvars, d);
        assert_eq!(coords.len(), mons.len());
        let mut p = Self::zero(nvars);
        for (m, c) in mons.into_iter().zip(coords) {
            if !ring.is_zero(c) {
                p.terms.insert(m, c.clone());
            }
        }
        p
    }

    /// Rendered with variables X, Y for n = 2 (X1, X2, ... otherwise).
    pub fn display(&self, ring: &CoeffRing) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let names: Vec<String> = if self.nvars == 2 {
            vec!["X".into(), "Y".into()]
        } else {
            (1..=self.nvars).map(|i| format!("X{i}")).collect()
        };
        // Display in descending-lex monomial order.
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.cmp(a));
        let mut parts = Vec::new();
        for e in keys {
            let c = &self.terms[e];
            let cs = ring.display(c);
            let mut mon = String::new();
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !mon.is_empty() {
                    mon.push('*');
                }
                if x == 1 {
                    mon.push_str(&names[i]);
                } else {
                    mon.push_str(&format!("{}^{}", names[i], x));
                }
            }
            let term = if mon.is_empty() {
                cs
            } else if cs == "1" {
                mon
            } else if cs == "-1" {
                format!("-{mon}")
            } else if cs.contains(['+', '-', '/']) && !cs.starts_with('-') {
                format!("({cs})*{mon}")
            } else if cs.starts_with('-') && cs[1..].contains(['+', '-', '/']) {
                format!("({cs})*{mon}")
            } else {
                format!("{cs}*{mon}")
            };
            parts.push(term);
        }
        parts.join(" + ")
    }

    /// Serialization form: (exponent vector, coefficient string) pairs.
    pub fn to_term_list(&self, ring: &CoeffRing) -> Vec<(Vec<u32>, String)> {
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.cmp(a));
        keys.iter()
            .map(|e| ((*e).clone(), ring.display(&self.terms[*e])))
            .collect()
    }
}

fn unit_exp(n: usize, i: usize) -> Exponents {
    let mut e = vec![0u32; n];
    e[i] = 1;
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order_is_lex_descending() {
        // Degree 2 in X, Y: X^2, XY, Y^2.
        assert_eq!(
            monomials(2, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(monomial_count(2, 5), 6);
        assert_eq!(monomial_count(3, 2), 6);
        assert_eq!(monomials(2, 0), vec![vec![0, 0]]);
    }

    #[test]
    fn matrix_action_column_convention() {
        // g = [[1,1],[0,1]] over F_3 sends X -> X and Y -> X + Y.
        let r = CoeffRing::poly_fp(3).unwrap();
        let g = RingMatrix::from_rows(vec![
            vec![r.one(), r.one()],
            vec![r.zero(), r.one()],
        ]);
        let x = MultiPoly::variable(&r, 2, 0);
        let y = MultiPoly::variable(&r, 2, 1);
        assert_eq!(x.apply_matrix(&r, &g), x);
        assert_eq!(y.apply_matrix(&r, &g), x.add(&r, &y));
    }

    #[test]
    fn coeff_vector_roundtrip() {
        let r = CoeffRing::integers();
        let x = MultiPoly::variable(&r, 2, 0);
        let y = MultiPoly::variable(&r, 2, 1);
        let f = x.mul(&r, &x).add(&r, &x.mul(&r, &y).scalar_mul(&r, &r.from_i64(-3)));
        let v = f.coeff_vector(&r, 2);
        assert_eq!(v, vec![r.from_i64(1), r.from_i64(-3), r.from_i64(0)]);
        assert_eq!(MultiPoly::from_coeff_vector(&r, 2, 2, &v), f);
        assert_eq!(f.display(&r), "X^2 + -3*X*Y");
    }

    #[test]
    fn homogeneous_detection() {
        let r = CoeffRing::integers();
        let x = MultiPoly::variable(&r, 2, 0);
        let one = MultiPoly::one(&r, 2);
        assert_eq!(x.homogeneous_degree(), Some(1));
        assert_eq!(x.add(&r, &one).homogeneous_degree(), None);
        assert_eq!(MultiPoly::zero(2).homogeneous_degree(), None);
    }
}
