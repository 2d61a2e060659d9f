//! Prime splitting data: factorization of rational primes in ℤ[ζ_p] and,
//! via the Dedekind criterion, in arbitrary monogenic number rings given
//! by a monic minimal polynomial.

use crate::coeff_rings::fppoly::FpPoly;
use crate::coeff_rings::is_prime_u64;
use crate::error::{Error, Result};
use crate::exact_linalg::Matrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Splitting of a rational prime q in a number ring: the list of
/// (ramification index e_i, residue degree f_i), with Σ e_i f_i equal to
/// the extension degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeSplitting {
    pub q: u64,
    pub field: String,
    /// (e_i, f_i) pairs, sorted.
    pub factors: Vec<(u64, u64)>,
    pub extension_degree: u64,
}

impl PrimeSplitting {
    pub fn sum_ef(&self) -> u64 {
        self.factors.iter().map(|(e, f)| e * f).sum()
    }

    pub fn g(&self) -> usize {
        self.factors.len()
    }

    pub fn unramified(&self) -> bool {
        self.factors.iter().all(|(e, _)| *e == 1)
    }
}

/// Splitting of q in ℚ(ζ_p): q = p is totally ramified with e = p-1;
/// q ≠ p is unramified with residue degree the order of q mod p. The
/// closed form is cross-checked by factoring Φ_p over F_q.
pub fn factor_prime_in_cyclotomic(q: u64, p: u64) -> Result<PrimeSplitting> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidConductor(p));
    }
    if !is_prime_u64(q) {
        return Err(Error::NotPrime(q));
    }
    let field = format!("Q(zeta_{p})");
    if p == 2 {
        // Degenerate: the field is Q itself.
        return Ok(PrimeSplitting {
            q,
            field,
            factors: vec![(1, 1)],
            extension_degree: 1,
        });
    }
    let degree = p - 1;
    let factors: Vec<(u64, u64)> = if q == p {
        vec![(degree, 1)]
    } else {
        let mut f = 1u64;
        let mut acc = q % p;
        while acc != 1 {
            acc = acc * q % p;
            f += 1;
        }
        let g = degree / f;
        vec![(1, f); g as usize]
    };

    // Cross-check against the actual factorization type of Φ_p mod q.
    let phi = FpPoly::new(q, vec![1; p as usize]);
    let dec = phi.squarefree_decomposition();
    if q == p {
        // Φ_p ≡ (x - 1)^{p-1} mod p.
        assert_eq!(dec.len(), 1, "p-adic check");
        assert_eq!(dec[0].1 as u64, degree, "total ramification");
        assert_eq!(dec[0].0, FpPoly::from_signed(p, &[-1, 1]), "ramified at x-1");
    } else {
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[0].1, 1, "Φ_p is squarefree mod q ≠ p");
        let counts = dec[0].0.distinct_degree_counts();
        let expect_f = factors[0].1 as usize;
        assert_eq!(
            counts,
            vec![(expect_f, factors.len())],
            "distinct-degree factorization agrees with the order of q mod p"
        );
    }

    let split = PrimeSplitting {
        q,
        field,
        factors,
        extension_degree: degree,
    };
    assert_eq!(split.sum_ef(), degree, "sum of e_i f_i");
    Ok(split)
}

/// Dedekind factorization of q in ℚ[x]/(minpoly).
///
/// The criterion test (does q divide the index [O_L : ℤ[α]]?) is applied
/// in full; when it fails the factorization would be unreliable and
/// `IndexDivisible` is returned rather than a possibly wrong answer.
pub fn factor_prime_dedekind(minpoly: &[BigInt], q: u64) -> Result<PrimeSplitting> {
    if !is_prime_u64(q) {
        return Err(Error::NotPrime(q));
    }
    let f = ip_trim(minpoly.to_vec());
    let deg = f.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| {
        Error::InvalidInput("minimal polynomial must be nonconstant".into())
    })?;
    if !f[deg].is_one() {
        return Err(Error::InvalidInput("minimal polynomial must be monic".into()));
    }

    let fbar = reduce_mod(&f, q);
    assert_eq!(fbar.degree(), Some(deg), "monic reduction keeps degree");
    let dec = fbar.squarefree_decomposition();

    // Index test. With fbar = ∏ s_j^{m_j}: radical g = ∏ s_j, cofactor
    // h = fbar / g, T = (lift(g) lift(h) - f)/q; q does not divide the
    // index iff gcd(T̄, ḡ, h̄) = 1.
    let mut gbar = FpPoly::constant(q, 1);
    for (s, _) in &dec {
        gbar = mul_fp(&gbar, s);
    }
    let (hbar, rad_rem) = {
        let (q0, r0) = fbar.div_rem(&gbar);
        (q0, r0)
    };
    assert!(rad_rem.coeffs.is_empty(), "radical divides");
    if hbar.degree().unwrap_or(0) > 0 || hbar.coeffs.is_empty() {
        let g_lift = lift(&gbar);
        let h_lift = lift(&hbar);
        let gh = ip_mul(&g_lift, &h_lift);
        let diff = ip_sub(&gh, &f);
        let bq = BigInt::from(q);
        let t: Vec<BigInt> = diff
            .iter()
            .map(|c| {
                let (quo, rem) = c.div_rem(&bq);
                assert!(rem.is_zero(), "g h ≡ f mod q by construction");
                quo
            })
            .collect();
        let tbar = reduce_mod(&t, q);
        let d = tbar.gcd(&gbar).gcd(&hbar);
        if d.degree().unwrap_or(0) >= 1 {
            return Err(Error::IndexDivisible(q));
        }
    }

    let mut factors: Vec<(u64, u64)> = Vec::new();
    for (s, mult) in &dec {
        for (fdeg, count) in s.distinct_degree_counts() {
            for _ in 0..count {
                factors.push((*mult as u64, fdeg as u64));
            }
        }
    }
    factors.sort_unstable();
    let split = PrimeSplitting {
        q,
        field: format!("Q[x]/({})", display_ip(&f)),
        factors,
        extension_degree: deg as u64,
    };
    assert_eq!(split.sum_ef(), deg as u64, "sum of e_i f_i");
    Ok(split)
}

fn mul_fp(a: &FpPoly, b: &FpPoly) -> FpPoly {
    use crate::exact_linalg::ExactScalar;
    a.mul(b)
}

/// Monic integer minimal polynomial of a primitive element of K(ζ_p),
/// where K = ℚ[x]/(k_minpoly). Tries α = θ + c ζ for c = 1, 2, ... until
/// the characteristic polynomial of multiplication by α on K ⊗ ℚ(ζ_p) is
/// squarefree. Correct when K and ℚ(ζ_p) are linearly disjoint (e.g. p
/// unramified in K ≠ ℚ(ζ_p) subfield), which the callers ensure.
pub fn compose_with_cyclotomic(k_minpoly: &[BigInt], p: u64) -> Result<Vec<BigInt>> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidConductor(p));
    }
    let f = ip_trim(k_minpoly.to_vec());
    let df = f.len() - 1;
    assert!(f[df].is_one(), "minimal polynomial must be monic");
    let dz = (p - 1) as usize;
    let n = df * dz;
    let idx = |i: usize, j: usize| i * dz + j;

    // Multiplication by θ on the basis θ^i ζ^j.
    let mut mtheta = Matrix::<BigInt>::zero(n, n);
    for i in 0..df {
        for j in 0..dz {
            if i + 1 < df {
                mtheta.set(idx(i + 1, j), idx(i, j), BigInt::one());
            } else {
                for k in 0..df {
                    mtheta.set(idx(k, j), idx(i, j), -f[k].clone());
                }
            }
        }
    }
    // Multiplication by ζ.
    let mut mzeta = Matrix::<BigInt>::zero(n, n);
    for i in 0..df {
        for j in 0..dz {
            if j + 1 < dz {
                mzeta.set(idx(i, j + 1), idx(i, j), BigInt::one());
            } else {
                for k in 0..dz {
                    mzeta.set(idx(i, k), idx(i, j), -BigInt::one());
                }
            }
        }
    }

    for c in 1..=16u64 {
        let mut m = mtheta.clone();
        for i in 0..n {
            for j in 0..n {
                let v = m.get(i, j) + BigInt::from(c) * mzeta.get(i, j);
                m.set(i, j, v);
            }
        }
        let charpoly = char_poly(&m);
        let deriv = ip_deriv(&charpoly);
        let g = ip_gcd(&charpoly, &deriv);
        if g.len() == 1 {
            return Ok(charpoly);
        }
    }
    Err(Error::PreconditionFailed(
        "no primitive element of the form theta + c*zeta found".into(),
    ))
}

/// Characteristic polynomial det(λI - M) by the Faddeev-LeVerrier
/// recurrence; the divisions by k are exact over ℤ.
pub fn char_poly(m: &Matrix<BigInt>) -> Vec<BigInt> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut b = Matrix::<BigInt>::identity(n);
    for k in 1..=n {
        let mb = m.mul(&b);
        let mut tr = BigInt::zero();
        for i in 0..n {
            tr += mb.get(i, i);
        }
        let (ck, rem) = (-tr).div_rem(&BigInt::from(k as u64));
        assert!(rem.is_zero(), "Faddeev-LeVerrier division is exact");
        coeffs[n - k] = ck.clone();
        b = mb;
        for i in 0..n {
            let v = b.get(i, i) + &ck;
            b.set(i, i, v);
        }
    }
    coeffs
}

// -- integer polynomial helpers (dense, constant term first) ---------------

pub fn ip_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigInt::zero());
    }
    v
}

pub fn ip_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ip_trim(out)
}

pub fn ip_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_else(BigInt::zero);
    ip_trim((0..n).map(|i| get(a, i) - get(b, i)).collect())
}

pub fn ip_deriv(a: &[BigInt]) -> Vec<BigInt> {
    if a.len() <= 1 {
        return vec![BigInt::zero()];
    }
    ip_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i as u64))
            .collect(),
    )
}

fn ip_content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

fn ip_primitive(a: &[BigInt]) -> Vec<BigInt> {
    let c = ip_content(a);
    a.iter().map(|x| x / &c).collect()
}

/// Primitive gcd over ℤ via the pseudo-remainder sequence (content
/// normalized away each step; fine at the degrees used here).
pub fn ip_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut f = ip_primitive(&ip_trim(a.to_vec()));
    let mut g = ip_primitive(&ip_trim(b.to_vec()));
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !(g.len() == 1 && g[0].is_zero()) {
        // Pseudo-remainder of f by g.
        let mut r = f.clone();
        let lg = g.last().unwrap().clone();
        while r.len() >= g.len() && !(r.len() == 1 && r[0].is_zero()) {
            let shift = r.len() - g.len();
            let lr = r.last().unwrap().clone();
            // r := lg * r - lr * x^shift * g
            let mut next = vec![BigInt::zero(); r.len()];
            for (i, c) in r.iter().enumerate() {
                next[i] = &lg * c;
            }
            for (i, c) in g.iter().enumerate() {
                next[i + shift] -= &lr * c;
            }
            r = ip_trim(next);
            if r.len() == 1 && r[0].is_zero() {
                break;
            }
        }
        f = g;
        g = ip_primitive(&r);
    }
    let f = ip_primitive(&f);
    // Normalize the sign of the leading coefficient.
    if f.last().unwrap().is_negative() {
        f.iter().map(|c| -c).collect()
    } else {
        f
    }
}

pub fn reduce_mod(a: &[BigInt], q: u64) -> FpPoly {
    let bq = BigInt::from(q);
    FpPoly::new(
        q,
        a.iter()
            .map(|c| {
                let r = c.mod_floor(&bq);
                r.try_into().expect("residue fits in u64")
            })
            .collect(),
    )
}

fn lift(a: &FpPoly) -> Vec<BigInt> {
    if a.coeffs.is_empty() {
        return vec![BigInt::zero()];
    }
    a.coeffs.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn display_ip(a: &[BigInt]) -> String {
    crate::coeff_rings::display_int_poly_pub(a, 'x')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn ip(coeffs: &[i64]) -> Vec<BigInt> {
        coeffs.iter().map(|&c| bi(c)).collect()
    }

    #[test]
    fn cyclotomic_splitting_examples() {
        // q = p: totally ramified, e = p-1.
        let s = factor_prime_in_cyclotomic(3, 3).unwrap();
        assert_eq!(s.factors, vec![(2, 1)]);
        // Φ_5 irreducible mod 2: order of 2 mod 5 is 4.
        let s = factor_prime_in_cyclotomic(2, 5).unwrap();
        assert_eq!(s.factors, vec![(1, 4)]);
        // Φ_3 = (x-2)(x-4) mod 7.
        let s = factor_prime_in_cyclotomic(7, 3).unwrap();
        assert_eq!(s.factors, vec![(1, 1), (1, 1)]);
    }

    #[test]
    fn cyclotomic_splitting_laws() {
        for p in [3u64, 5, 7, 11] {
            for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
                let s = factor_prime_in_cyclotomic(q, p).unwrap();
                assert_eq!(s.sum_ef(), p - 1, "sum e_i f_i at q={q} p={p}");
                if q != p {
                    assert!(s.unramified(), "q != p is unramified");
                } else {
                    assert_eq!(s.factors, vec![(p - 1, 1)]);
                }
            }
        }
    }

    #[test]
    fn dedekind_examples() {
        // Φ_5 at q = 2: irreducible.
        let s = factor_prime_dedekind(&ip(&[1, 1, 1, 1, 1]), 2).unwrap();
        assert_eq!(s.factors, vec![(1, 4)]);
        // x^2 + 1 at q = 5: splits.
        let s = factor_prime_dedekind(&ip(&[1, 0, 1]), 5).unwrap();
        assert_eq!(s.factors, vec![(1, 1), (1, 1)]);
        // x^2 + 1 at q = 2: ramified, (x+1)^2; index test passes (disc = -4,
        // field disc = -4, index 1).
        let s = factor_prime_dedekind(&ip(&[1, 0, 1]), 2).unwrap();
        assert_eq!(s.factors, vec![(2, 1)]);
    }

    #[test]
    fn dedekind_rejects_divisible_index() {
        // x^2 - 5 at q = 2: 2 divides the index of Z[√5] in Z[(1+√5)/2]...
        // actually disc(x^2-5) = 20, field disc = 5, index = 2. The
        // factorization of 2 via x^2-5 mod 2 = x(x+... = x^2+1 = (x+1)^2
        // would wrongly claim ramification; Dedekind must reject.
        let err = factor_prime_dedekind(&ip(&[-5, 0, 1]), 2);
        assert_eq!(err, Err(Error::IndexDivisible(2)));
    }

    #[test]
    fn composite_minpoly_gaussian_zeta3() {
        // Q(i, ζ_3) has degree 4; q = 3 factors with e = 2 throughout
        // (totally ramified step from ζ_3, unramified step from i).
        let m = compose_with_cyclotomic(&ip(&[1, 0, 1]), 3).unwrap();
        assert_eq!(m.len(), 5, "degree 4");
        assert!(m[4].is_one());
        let s = factor_prime_dedekind(&m, 3).unwrap();
        assert_eq!(s.sum_ef(), 4);
        for (e, _) in &s.factors {
            assert_eq!(*e, 2, "every e_i equals e(q/3) = p-1 = 2");
        }
    }

    #[test]
    fn char_poly_small() {
        // Companion matrix of x^2 - x - 1.
        let m = Matrix::from_rows(vec![vec![bi(0), bi(1)], vec![bi(1), bi(1)]]);
        assert_eq!(char_poly(&m), ip(&[-1, -1, 1]));
    }

    #[test]
    fn ip_gcd_basic() {
        // gcd((x-1)(x+2), (x-1)(x-3)) = x - 1.
        let a = ip_mul(&ip(&[-1, 1]), &ip(&[2, 1]));
        let b = ip_mul(&ip(&[-1, 1]), &ip(&[-3, 1]));
        assert_eq!(ip_gcd(&a, &b), ip(&[-1, 1]));
        assert_eq!(ip_gcd(&ip(&[2, 0, 2]), &ip(&[4])), ip(&[1]));
    }
}
