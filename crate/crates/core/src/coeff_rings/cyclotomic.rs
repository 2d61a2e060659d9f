//! Arithmetic in the cyclotomic order ℤ[ζ_p], p prime.
//!
//! Elements are integer coefficient vectors of length p-1 on the power
//! basis 1, ζ, ..., ζ^{p-2}, fully reduced modulo Φ_p = 1 + x + ... +
//! x^{p-1}. The prime above p is π = ζ - 1, with Norm(π) = ±p and
//! π^{p-1} = p·(unit).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Reduce an integer polynomial in ζ (any degree) to the canonical
/// length-(p-1) vector, using ζ^p = 1 and 1 + ζ + ... + ζ^{p-1} = 0.
pub fn reduce(coeffs: &[BigInt], p: u64) -> Vec<BigInt> {
    let pu = p as usize;
    let mut folded = vec![BigInt::zero(); pu];
    for (i, c) in coeffs.iter().enumerate() {
        folded[i % pu] += c;
    }
    let top = folded[pu - 1].clone();
    let mut out = Vec::with_capacity(pu - 1);
    for item in folded.into_iter().take(pu - 1) {
        out.push(item - &top);
    }
    out
}

pub fn zero(p: u64) -> Vec<BigInt> {
    vec![BigInt::zero(); (p - 1) as usize]
}

pub fn from_int(p: u64, n: &BigInt) -> Vec<BigInt> {
    let mut v = zero(p);
    v[0] = n.clone();
    v
}

/// ζ^k as a canonical vector.
pub fn zeta_pow(p: u64, k: u64) -> Vec<BigInt> {
    let mut raw = vec![BigInt::zero(); (k % p) as usize + 1];
    *raw.last_mut().unwrap() = BigInt::one();
    reduce(&raw, p)
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|x| -x).collect()
}

pub fn mul(a: &[BigInt], b: &[BigInt], p: u64) -> Vec<BigInt> {
    if a.iter().all(|x| x.is_zero()) || b.iter().all(|x| x.is_zero()) {
        return zero(p);
    }
    let mut raw = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            raw[i + j] += x * y;
        }
    }
    reduce(&raw, p)
}

pub fn scalar_mul(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    a.iter().map(|x| x * c).collect()
}

pub fn is_zero(a: &[BigInt]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Apply the Galois automorphism ζ ↦ ζ^k (k coprime to p).
pub fn galois(a: &[BigInt], k: u64, p: u64) -> Vec<BigInt> {
    let pu = p as usize;
    let mut raw = vec![BigInt::zero(); pu];
    for (i, c) in a.iter().enumerate() {
        let j = ((i as u64) * k % p) as usize;
        raw[j] += c;
    }
    reduce(&raw, p)
}

/// Field norm down to ℤ: the product of all conjugates.
pub fn norm(a: &[BigInt], p: u64) -> BigInt {
    if is_zero(a) {
        return BigInt::zero();
    }
    let mut acc = a.to_vec();
    for k in 2..p {
        acc = mul(&acc, &galois(a, k, p), p);
    }
    // The product is Galois-fixed, hence a rational integer n: the vector
    // n - t(1 + ζ + ... ) has all-equal tail coefficients equal to -t.
    let t = -acc[1].clone();
    for c in acc.iter().skip(1) {
        assert_eq!(*c, -t.clone(), "norm must be Galois-fixed");
    }
    acc[0].clone() + t
}

/// Exact division by π = ζ - 1; `None` if π does not divide.
///
/// Uses (ζ-1) · (-∏_{i≥2}(1-ζ^i)) = p, so x/π = -x·∏_{i≥2}(1-ζ^i)/p with
/// the final division checked coefficientwise.
pub fn div_by_pi(a: &[BigInt], p: u64) -> Option<Vec<BigInt>> {
    if is_zero(a) {
        return Some(a.to_vec());
    }
    let mut cof = from_int(p, &BigInt::one());
    for i in 2..p {
        let term = sub(&from_int(p, &BigInt::one()), &zeta_pow(p, i));
        cof = mul(&cof, &term, p);
    }
    let prod = neg(&mul(a, &cof, p));
    let bp = BigInt::from(p);
    let mut out = Vec::with_capacity(prod.len());
    for c in prod {
        let (q, r) = num_integer::Integer::div_rem(&c, &bp);
        if !r.is_zero() {
            return None;
        }
        out.push(q);
    }
    Some(out)
}

/// π-adic valuation; `None` encodes +∞ (the zero element).
pub fn pi_valuation(a: &[BigInt], p: u64) -> Option<u64> {
    if is_zero(a) {
        return None;
    }
    let mut v = 0u64;
    let mut cur = a.to_vec();
    while let Some(next) = div_by_pi(&cur, p) {
        v += 1;
        cur = next;
    }
    Some(v)
}

/// Content: gcd of the coefficients (nonnegative).
pub fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = num_integer::Integer::gcd(&g, c);
    }
    g.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn reduce_examples() {
        // ζ^3 = 1 for p = 3.
        assert_eq!(reduce(&[bi(0), bi(0), bi(0), bi(1)], 3), vec![bi(1), bi(0)]);
        // 1 + ζ + ζ^2 = 0 for p = 3.
        assert_eq!(reduce(&[bi(1), bi(1), bi(1)], 3), vec![bi(0), bi(0)]);
        // ζ^4 = -1 - ζ - ζ^2 - ζ^3 for p = 5.
        assert_eq!(
            reduce(&[bi(0), bi(0), bi(0), bi(0), bi(1)], 5),
            vec![bi(-1), bi(-1), bi(-1), bi(-1)]
        );
    }

    #[test]
    fn norm_of_units_and_pi() {
        // Norm(ζ + 1) = Φ_3(-1) = 1.
        assert_eq!(norm(&[bi(1), bi(1)], 3), bi(1));
        // Norm(ζ - 1) = ±Φ_3(1) = ±3.
        assert_eq!(norm(&[bi(-1), bi(1)], 3).abs(), bi(3));
        // Norm of the rational integer 2 is 2^{p-1}.
        assert_eq!(norm(&from_int(5, &bi(2)), 5), bi(16));
    }

    #[test]
    fn pi_division_and_valuation() {
        // v(ζ-1) = 1 for every p.
        for p in [3u64, 5, 7] {
            let pi = sub(&zeta_pow(p, 1), &from_int(p, &bi(1)));
            assert_eq!(pi_valuation(&pi, p), Some(1));
            // v(p) = p - 1.
            assert_eq!(pi_valuation(&from_int(p, &BigInt::from(p)), p), Some(p - 1));
        }
        // v(3) = 2 in Z[zeta_3].
        assert_eq!(pi_valuation(&from_int(3, &bi(3)), 3), Some(2));
        assert_eq!(pi_valuation(&zero(3), 3), None);
    }

    #[test]
    fn galois_is_ring_map() {
        let a = vec![bi(2), bi(-1), bi(0), bi(3)]; // in Z[zeta_5]
        let b = vec![bi(1), bi(1), bi(-2), bi(0)];
        for k in 2..5 {
            let lhs = galois(&mul(&a, &b, 5), k, 5);
            let rhs = mul(&galois(&a, k, 5), &galois(&b, k, 5), 5);
            assert_eq!(lhs, rhs);
        }
    }
}
