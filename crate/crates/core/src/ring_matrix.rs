//! Matrices over a [`CoeffRing`] and the restriction-of-scalars "model"
//! that turns them into matrices over a PID scalar (ℤ or F_p[t]) for the
//! normal-form engine.
//!
//! A cyclotomic entry becomes a (p-1)×(p-1) integer block (its
//! multiplication matrix on the power basis); ℤ-like entries stay 1×1.
//! Localized denominators are cleared by a global unit scaling, which is
//! harmless for every downstream use (kernels, local membership, torsion
//! stripped to the localized prime).

use crate::coeff_rings::{cyclotomic, CoeffRing, FpPoly, RingElement, RingKind};
use crate::error::{Error, Result};
use crate::exact_linalg::{ExactScalar, Matrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RingElement>,
}

impl std::fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RingMatrix {}x{}", self.rows, self.cols)
    }
}

impl RingMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<RingElement>) -> Self {
        assert_eq!(data.len(), rows * cols);
        RingMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<RingElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        RingMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zero(ring: &CoeffRing, rows: usize, cols: usize) -> Self {
        RingMatrix {
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &CoeffRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.data
    }

    pub fn col(&self, j: usize) -> Vec<RingElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, ring: &CoeffRing, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut m = Self::zero(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let v = ring.add(m.get(i, j), &ring.mul(a, b));
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, ring: &CoeffRing, v: &[RingElement]) -> Vec<RingElement> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for j in 0..self.cols {
                    acc = ring.add(&acc, &ring.mul(self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, ring: &CoeffRing, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| ring.add(a, b))
            .collect();
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, ring: &CoeffRing, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| ring.sub(a, b))
            .collect();
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scalar_mul(&self, ring: &CoeffRing, c: &RingElement) -> Self {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| ring.mul(a, c)).collect(),
        }
    }

    pub fn pow(&self, ring: &CoeffRing, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Self::identity(ring, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            base = base.mul(ring, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self, ring: &CoeffRing) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { ring.one() } else { ring.zero() };
                if *self.get(i, j) != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_upper_triangular(&self, ring: &CoeffRing) -> bool {
        for i in 0..self.rows {
            for j in 0..i.min(self.cols) {
                if !ring.is_zero(self.get(i, j)) {
                    return false;
                }
            }
        }
        true
    }

    /// Determinant: Laplace expansion for tiny matrices, fraction-free
    /// elimination otherwise. Exact in the subring generated by entries.
    pub fn det(&self, ring: &CoeffRing) -> RingElement {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        match n {
            0 => ring.one(),
            1 => self.get(0, 0).clone(),
            2 => ring.sub(
                &ring.mul(self.get(0, 0), self.get(1, 1)),
                &ring.mul(self.get(0, 1), self.get(1, 0)),
            ),
            3 | 4 => self.det_laplace(ring),
            _ => self.det_bareiss(ring),
        }
    }

    fn det_laplace(&self, ring: &CoeffRing) -> RingElement {
        let n = self.rows;
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = ring.zero();
        for j in 0..n {
            let a = self.get(0, j);
            if ring.is_zero(a) {
                continue;
            }
            let mut sub = Self::zero(ring, n - 1, n - 1);
            for i in 1..n {
                let mut cc = 0;
                for jj in 0..n {
                    if jj == j {
                        continue;
                    }
                    sub.set(i - 1, cc, self.get(i, jj).clone());
                    cc += 1;
                }
            }
            let term = ring.mul(a, &sub.det_laplace(ring));
            acc = if j % 2 == 0 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
        acc
    }

    fn det_bareiss(&self, ring: &CoeffRing) -> RingElement {
        let n = self.rows;
        let mut m = self.clone();
        let mut prev = ring.one();
        let mut sign = false;
        for k in 0..n - 1 {
            if ring.is_zero(m.get(k, k)) {
                let Some(r) = (k + 1..n).find(|&r| !ring.is_zero(m.get(r, k))) else {
                    return ring.zero();
                };
                for j in 0..n {
                    let a = m.get(k, j).clone();
                    let b = m.get(r, j).clone();
                    m.set(k, j, b);
                    m.set(r, j, a);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = ring.sub(
                        &ring.mul(m.get(k, k), m.get(i, j)),
                        &ring.mul(m.get(i, k), m.get(k, j)),
                    );
                    let v = ring
                        .exact_div(&num, &prev)
                        .expect("fraction-free elimination divides exactly");
                    m.set(i, j, v);
                }
                m.set(i, k, ring.zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        if sign {
            ring.neg(&d)
        } else {
            d
        }
    }

    /// Inverse via the adjugate; the determinant must be a unit.
    pub fn inverse(&self, ring: &CoeffRing) -> Result<RingMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let d = self.det(ring);
        if !ring.is_unit(&d) {
            return Err(Error::NotInvertible);
        }
        let dinv = ring.inv_unit(&d)?;
        if n == 0 {
            return Ok(self.clone());
        }
        let mut adj = Self::zero(ring, n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = if n == 1 {
                    ring.one()
                } else {
                    let mut sub = Self::zero(ring, n - 1, n - 1);
                    let mut rr = 0;
                    for si in 0..n {
                        if si == i {
                            continue;
                        }
                        let mut cc = 0;
                        for sj in 0..n {
                            if sj == j {
                                continue;
                            }
                            sub.set(rr, cc, self.get(si, sj).clone());
                            cc += 1;
                        }
                        rr += 1;
                    }
                    sub.det(ring)
                };
                let cof = if (i + j) % 2 == 0 {
                    minor
                } else {
                    ring.neg(&minor)
                };
                adj.set(j, i, ring.mul(&cof, &dinv));
            }
        }
        Ok(adj)
    }
}

// ---------------------------------------------------------------------------
// Restriction-of-scalars model.
// ---------------------------------------------------------------------------

/// Number of PID coordinates per ring coordinate: p-1 for cyclotomic
/// rings, 1 otherwise.
pub fn model_block(ring: &CoeffRing) -> usize {
    match ring.kind {
        RingKind::Cyclotomic { p } => (p - 1) as usize,
        _ => 1,
    }
}

/// The prime to strip torsion to in the localized integer model (q for
/// ℤ_(q); p for ℤ[ζ_p]_(π), since π-power torsion is exactly p-power
/// torsion as abelian groups). `None` for unlocalized rings.
pub fn int_model_prime(ring: &CoeffRing) -> Option<BigInt> {
    if !ring.is_localized() {
        return None;
    }
    match ring.kind {
        RingKind::Integers => match ring.localization {
            Some(crate::coeff_rings::Localization::RationalPrime(q)) => Some(BigInt::from(q)),
            _ => None,
        },
        RingKind::Cyclotomic { p } => Some(BigInt::from(p)),
        RingKind::PolyFp { .. } => None,
    }
}

pub fn poly_model_prime(ring: &CoeffRing) -> Option<FpPoly> {
    match (ring.kind, ring.is_localized()) {
        (RingKind::PolyFp { p }, true) => Some(FpPoly::monomial(p, 1)),
        _ => None,
    }
}

pub fn is_poly_model(ring: &CoeffRing) -> bool {
    matches!(ring.kind, RingKind::PolyFp { .. })
}

fn int_den_lcm(elems: &[RingElement]) -> BigInt {
    let mut l = <BigInt as One>::one();
    for e in elems {
        let d = match e {
            RingElement::Int { den, .. } => den.clone(),
            RingElement::Cyc { den, .. } => den.clone(),
            RingElement::Poly { .. } => panic!("integer model of a polynomial ring"),
        };
        l = l.lcm(&d);
    }
    l.abs()
}

/// Integer model of a ring matrix (ℤ and cyclotomic rings). Denominators
/// are cleared by one global unit scaling; the scaling factor is returned.
pub fn to_int_model(ring: &CoeffRing, m: &RingMatrix) -> (Matrix<BigInt>, BigInt) {
    let block = model_block(ring);
    let scale = int_den_lcm(&m.data);
    let p = ring.param();
    let mut out = Matrix::<BigInt>::zero(m.rows() * block, m.cols() * block);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            match m.get(i, j) {
                RingElement::Int { num, den } => {
                    let v = num * (&scale / den);
                    out.set(i, j, v);
                }
                RingElement::Cyc { num, den } => {
                    let p = p.expect("cyclotomic parameter");
                    let c = &scale / den;
                    let scaled = cyclotomic::scalar_mul(num, &c);
                    for k in 0..block {
                        let col = cyclotomic::mul(&scaled, &cyclotomic::zeta_pow(p, k as u64), p);
                        for (r, coeff) in col.iter().enumerate() {
                            out.set(i * block + r, j * block + k, coeff.clone());
                        }
                    }
                }
                RingElement::Poly { .. } => panic!("integer model of a polynomial ring"),
            }
        }
    }
    (out, scale)
}

/// Integer model of a coordinate vector; same layout as [`to_int_model`].
pub fn vec_to_int_model(ring: &CoeffRing, v: &[RingElement]) -> (Vec<BigInt>, BigInt) {
    let block = model_block(ring);
    let scale = int_den_lcm(v);
    let mut out = vec![<BigInt as Zero>::zero(); v.len() * block];
    for (i, e) in v.iter().enumerate() {
        match e {
            RingElement::Int { num, den } => {
                out[i] = num * (&scale / den);
            }
            RingElement::Cyc { num, den } => {
                let c = &scale / den;
                for (k, coeff) in num.iter().enumerate() {
                    out[i * block + k] = coeff * &c;
                }
            }
            RingElement::Poly { .. } => panic!("integer model of a polynomial ring"),
        }
    }
    let _ = ring;
    (out, scale)
}

/// Reassemble a model vector into ring coordinates.
pub fn int_model_to_vec(ring: &CoeffRing, v: &[BigInt]) -> Vec<RingElement> {
    let block = model_block(ring);
    assert_eq!(v.len() % block, 0);
    let n = v.len() / block;
    (0..n)
        .map(|i| match ring.kind {
            RingKind::Integers => RingElement::Int {
                num: v[i].clone(),
                den: <BigInt as One>::one(),
            },
            RingKind::Cyclotomic { .. } => RingElement::Cyc {
                num: v[i * block..(i + 1) * block].to_vec(),
                den: <BigInt as One>::one(),
            },
            RingKind::PolyFp { .. } => panic!("integer model of a polynomial ring"),
        })
        .collect()
}

fn poly_den_lcm(elems: &[RingElement]) -> FpPoly {
    let mut l: Option<FpPoly> = None;
    for e in elems {
        match e {
            RingElement::Poly { den, .. } => {
                l = Some(match l {
                    None => den.clone(),
                    Some(cur) => {
                        let g = cur.gcd(den);
                        cur.mul(den).exact_div(&g).expect("gcd divides").monic()
                    }
                });
            }
            _ => panic!("polynomial model of a non-polynomial ring"),
        }
    }
    l.unwrap_or_else(FpPoly::one)
}

/// F_p[t] model of a ring matrix, clearing denominators by a global unit
/// of the localization.
pub fn to_poly_model(ring: &CoeffRing, m: &RingMatrix) -> (Matrix<FpPoly>, FpPoly) {
    assert!(is_poly_model(ring));
    let scale = poly_den_lcm(&m.data);
    let mut out = Matrix::<FpPoly>::zero(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            match m.get(i, j) {
                RingElement::Poly { num, den } => {
                    let c = scale.exact_div(den).expect("lcm clears");
                    out.set(i, j, num.mul(&c));
                }
                _ => unreachable!(),
            }
        }
    }
    (out, scale)
}

pub fn vec_to_poly_model(ring: &CoeffRing, v: &[RingElement]) -> (Vec<FpPoly>, FpPoly) {
    assert!(is_poly_model(ring));
    let scale = poly_den_lcm(v);
    let out = v
        .iter()
        .map(|e| match e {
            RingElement::Poly { num, den } => {
                let c = scale.exact_div(den).expect("lcm clears");
                num.mul(&c)
            }
            _ => unreachable!(),
        })
        .collect();
    (out, scale)
}

pub fn poly_model_to_vec(ring: &CoeffRing, v: &[FpPoly]) -> Vec<RingElement> {
    let p = ring.param().expect("polynomial ring");
    v.iter()
        .map(|f| RingElement::Poly {
            num: FpPoly::new(p, f.coeffs.clone()),
            den: FpPoly::constant(p, 1),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mat_mul_and_inverse_over_z() {
        let r = CoeffRing::integers();
        let m = RingMatrix::from_rows(vec![
            vec![r.from_i64(0), r.from_i64(-1)],
            vec![r.from_i64(1), r.from_i64(-1)],
        ]);
        let m3 = m.pow(&r, 3);
        assert!(m3.is_identity(&r), "order 3 rotation");
        let inv = m.inverse(&r).unwrap();
        assert!(m.mul(&r, &inv).is_identity(&r));
        assert_eq!(m.det(&r), r.one());
    }

    #[test]
    fn inverse_over_cyclotomic() {
        let r = CoeffRing::cyclotomic(3).unwrap();
        let m = RingMatrix::from_rows(vec![
            vec![r.zeta(), r.zero()],
            vec![r.zero(), r.pow(&r.zeta(), 2)],
        ]);
        let inv = m.inverse(&r).unwrap();
        assert!(m.mul(&r, &inv).is_identity(&r));
    }

    #[test]
    fn int_model_respects_multiplication() {
        let r = CoeffRing::cyclotomic(5).unwrap();
        let a = RingMatrix::from_rows(vec![
            vec![r.zeta(), r.one()],
            vec![r.zero(), r.pow(&r.zeta(), 3)],
        ]);
        let b = RingMatrix::from_rows(vec![
            vec![r.from_i64(2), r.zeta()],
            vec![r.sub(&r.zeta(), &r.one()), r.one()],
        ]);
        let (ma, _) = to_int_model(&r, &a);
        let (mb, _) = to_int_model(&r, &b);
        let (mab, _) = to_int_model(&r, &a.mul(&r, &b));
        assert_eq!(ma.mul(&mb), mab);

        // Model of a vector commutes with matrix application.
        let v = vec![r.add(&r.zeta(), &r.from_i64(3)), r.pow(&r.zeta(), 2)];
        let (mv, _) = vec_to_int_model(&r, &v);
        let av = a.mul_vec(&r, &v);
        let (mav, _) = vec_to_int_model(&r, &av);
        assert_eq!(ma.mul_vec(&mv), mav);
        // Round trip.
        assert_eq!(int_model_to_vec(&r, &mv), v);
    }

    #[test]
    fn poly_model_roundtrip() {
        let r = CoeffRing::poly_fp_localized(3).unwrap();
        let t = r.prime_element();
        let m = RingMatrix::from_rows(vec![
            vec![r.one(), t.clone()],
            vec![r.zero(), r.one()],
        ]);
        let (pm, scale) = to_poly_model(&r, &m);
        assert!(ExactScalar::is_unit(&scale));
        assert_eq!(pm.get(0, 1), &FpPoly::monomial(3, 1));
    }

    #[test]
    fn bareiss_det_matches_laplace() {
        let r = CoeffRing::integers();
        let mut m = RingMatrix::zero(&r, 5, 5);
        let vals: [[i64; 5]; 5] = [
            [2, 1, 0, 3, -1],
            [0, 1, 4, 1, 2],
            [1, -2, 1, 0, 0],
            [3, 0, 0, 1, 1],
            [0, 2, -1, 1, 3],
        ];
        for i in 0..5 {
            for j in 0..5 {
                m.set(i, j, r.from_i64(vals[i][j]));
            }
        }
        // Independent route: integer Bareiss from the exact engine.
        let (im, _) = to_int_model(&r, &m);
        let expect = crate::exact_linalg::determinant(&im);
        assert_eq!(m.det(&r), crate::coeff_rings::RingElement::Int { num: expect, den: num_bigint::BigInt::from(1) });
    }
}
