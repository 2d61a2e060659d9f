//! Base-ring arithmetic: ℤ, the cyclotomic order ℤ[ζ_p] (p prime), and
//! F_p[t], each optionally localized at its designated prime (a rational
//! prime q, π = ζ - 1, or (t) respectively).
//!
//! Localized elements are exact fractions num/den with the denominator a
//! non-member of the localized prime; there is no completion and no
//! p-adic approximation. Canonical forms are unique: cyclotomic numerators
//! are fully reduced mod Φ_p, fractions are in lowest terms with a
//! unit-normalized denominator (positive integer / monic polynomial).

pub mod cyclotomic;
pub mod fppoly;
pub mod splitting;

pub use fppoly::FpPoly;
pub use splitting::{factor_prime_dedekind, factor_prime_in_cyclotomic, PrimeSplitting};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingKind {
    Integers,
    Cyclotomic { p: u64 },
    PolyFp { p: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Localization {
    /// ℤ localized at a rational prime q.
    RationalPrime(u64),
    /// ℤ[ζ_p] localized at π = ζ - 1.
    CyclotomicPi,
    /// F_p[t] localized at (t).
    PolyT,
}

/// Descriptor of the base arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRing {
    pub kind: RingKind,
    pub localization: Option<Localization>,
}

/// Element of a [`CoeffRing`], in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingElement {
    /// num/den with den > 0, gcd(num, den) = 1; den = 1 unless localized.
    Int { num: BigInt, den: BigInt },
    /// num/den with num on the power basis of ℤ[ζ_p], den a positive
    /// integer coprime to p (den = 1 unless localized).
    Cyc { num: Vec<BigInt>, den: BigInt },
    /// num/den in F_p[t] with den monic, coprime to num, den(0) ≠ 0 when
    /// localized (den = 1 otherwise).
    Poly { num: FpPoly, den: FpPoly },
}

impl CoeffRing {
    pub fn integers() -> Self {
        CoeffRing {
            kind: RingKind::Integers,
            localization: None,
        }
    }

    pub fn integers_localized(q: u64) -> Result<Self> {
        if !is_prime_u64(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(CoeffRing {
            kind: RingKind::Integers,
            localization: Some(Localization::RationalPrime(q)),
        })
    }

    pub fn cyclotomic(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidConductor(p));
        }
        Ok(CoeffRing {
            kind: RingKind::Cyclotomic { p },
            localization: None,
        })
    }

    pub fn cyclotomic_localized(p: u64) -> Result<Self> {
        let mut r = Self::cyclotomic(p)?;
        r.localization = Some(Localization::CyclotomicPi);
        Ok(r)
    }

    pub fn poly_fp(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(CoeffRing {
            kind: RingKind::PolyFp { p },
            localization: None,
        })
    }

    pub fn poly_fp_localized(p: u64) -> Result<Self> {
        let mut r = Self::poly_fp(p)?;
        r.localization = Some(Localization::PolyT);
        Ok(r)
    }

    pub fn is_localized(&self) -> bool {
        self.localization.is_some()
    }

    /// Conductor / characteristic parameter, when there is one.
    pub fn param(&self) -> Option<u64> {
        match self.kind {
            RingKind::Integers => None,
            RingKind::Cyclotomic { p } | RingKind::PolyFp { p } => Some(p),
        }
    }

    pub fn characteristic_zero(&self) -> bool {
        !matches!(self.kind, RingKind::PolyFp { .. })
    }

    pub fn describe(&self) -> String {
        let base = match self.kind {
            RingKind::Integers => "Z".to_string(),
            RingKind::Cyclotomic { p } => format!("Z[zeta_{p}]"),
            RingKind::PolyFp { p } => format!("F_{p}[t]"),
        };
        match self.localization {
            None => base,
            Some(Localization::RationalPrime(q)) => format!("{base} localized at ({q})"),
            Some(Localization::CyclotomicPi) => format!("{base} localized at (zeta-1)"),
            Some(Localization::PolyT) => format!("{base} localized at (t)"),
        }
    }

    // -- element constructors ------------------------------------------------

    pub fn zero(&self) -> RingElement {
        match self.kind {
            RingKind::Integers => RingElement::Int {
                num: BigInt::zero(),
                den: BigInt::one(),
            },
            RingKind::Cyclotomic { p } => RingElement::Cyc {
                num: cyclotomic::zero(p),
                den: BigInt::one(),
            },
            RingKind::PolyFp { p } => RingElement::Poly {
                num: FpPoly::zero_p(p),
                den: FpPoly::constant(p, 1),
            },
        }
    }

    pub fn one(&self) -> RingElement {
        self.from_int(&BigInt::one())
    }

    pub fn from_i64(&self, n: i64) -> RingElement {
        self.from_int(&BigInt::from(n))
    }

    pub fn from_int(&self, n: &BigInt) -> RingElement {
        match self.kind {
            RingKind::Integers => RingElement::Int {
                num: n.clone(),
                den: BigInt::one(),
            },
            RingKind::Cyclotomic { p } => RingElement::Cyc {
                num: cyclotomic::from_int(p, n),
                den: BigInt::one(),
            },
            RingKind::PolyFp { p } => {
                let pp = BigInt::from(p);
                let r = n.mod_floor(&pp);
                let c: u64 = r.try_into().expect("reduced residue fits");
                RingElement::Poly {
                    num: FpPoly::constant(p, c),
                    den: FpPoly::constant(p, 1),
                }
            }
        }
    }

    /// ζ (cyclotomic rings only).
    pub fn zeta(&self) -> RingElement {
        match self.kind {
            RingKind::Cyclotomic { p } => RingElement::Cyc {
                num: cyclotomic::zeta_pow(p, 1),
                den: BigInt::one(),
            },
            _ => panic!("zeta only exists in cyclotomic rings"),
        }
    }

    pub fn zeta_pow(&self, k: u64) -> RingElement {
        match self.kind {
            RingKind::Cyclotomic { p } => RingElement::Cyc {
                num: cyclotomic::zeta_pow(p, k),
                den: BigInt::one(),
            },
            _ => panic!("zeta only exists in cyclotomic rings"),
        }
    }

    /// The designated prime element: q, π = ζ - 1, or t.
    pub fn prime_element(&self) -> RingElement {
        match (self.kind, self.localization) {
            (RingKind::Integers, Some(Localization::RationalPrime(q))) => {
                self.from_int(&BigInt::from(q))
            }
            (RingKind::Cyclotomic { .. }, _) => self.sub(&self.zeta(), &self.one()),
            (RingKind::PolyFp { p }, _) => RingElement::Poly {
                num: FpPoly::monomial(p, 1),
                den: FpPoly::constant(p, 1),
            },
            _ => panic!("ring has no designated prime"),
        }
    }

    // -- canonicalization ----------------------------------------------------

    fn canon(&self, x: RingElement) -> RingElement {
        match x {
            RingElement::Int { num, den } => {
                assert!(!den.is_zero(), "zero denominator");
                let (mut num, mut den) = if den.is_negative() {
                    (-num, -den)
                } else {
                    (num, den)
                };
                let g = num.gcd(&den);
                if g > BigInt::one() {
                    num /= &g;
                    den /= &g;
                }
                if num.is_zero() {
                    den = BigInt::one();
                }
                RingElement::Int { num, den }
            }
            RingElement::Cyc { num, den } => {
                assert!(!den.is_zero(), "zero denominator");
                let (mut num, mut den) = if den.is_negative() {
                    (cyclotomic::neg(&num), -den)
                } else {
                    (num, den)
                };
                let g = cyclotomic::content(&num).gcd(&den);
                if g > BigInt::one() {
                    num = num.iter().map(|c| c / &g).collect();
                    den /= &g;
                }
                if cyclotomic::is_zero(&num) {
                    den = BigInt::one();
                }
                RingElement::Cyc { num, den }
            }
            RingElement::Poly { num, den } => {
                assert!(!ExactScalarIsZero::is_zero_s(&den), "zero denominator");
                let g = num.gcd(&den);
                let (num, den) = if g.degree().unwrap_or(0) >= 1 {
                    (
                        num.div_rem(&g).0,
                        den.div_rem(&g).0,
                    )
                } else {
                    (num, den)
                };
                // Normalize the denominator monic.
                let lc = den.leading();
                let (num, den) = if lc != 1 {
                    let inv = fppoly::invmod(lc, den.p);
                    (num.scale(inv), den.scale(inv))
                } else {
                    (num, den)
                };
                let den = if num.coeffs.is_empty() {
                    FpPoly::constant(den.p, 1)
                } else {
                    den
                };
                RingElement::Poly { num, den }
            }
        }
    }

    /// Check that a canonical element actually lies in this ring (its
    /// denominator is a unit of the localization).
    fn in_ring(&self, x: &RingElement) -> bool {
        match (x, self.kind, self.localization) {
            (RingElement::Int { den, .. }, RingKind::Integers, None) => den.is_one(),
            (RingElement::Int { den, .. }, RingKind::Integers, Some(Localization::RationalPrime(q))) => {
                !(den % BigInt::from(q)).is_zero()
            }
            (RingElement::Cyc { den, .. }, RingKind::Cyclotomic { .. }, None) => den.is_one(),
            (RingElement::Cyc { den, .. }, RingKind::Cyclotomic { p }, Some(_)) => {
                !(den % BigInt::from(p)).is_zero()
            }
            (RingElement::Poly { den, .. }, RingKind::PolyFp { .. }, None) => den.is_unit_s(),
            (RingElement::Poly { den, .. }, RingKind::PolyFp { .. }, Some(_)) => den.coeff(0) != 0,
            _ => false,
        }
    }

    // -- arithmetic ------------------------------------------------------------

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let r = match (a, b) {
            (RingElement::Int { num: an, den: ad }, RingElement::Int { num: bn, den: bd }) => {
                RingElement::Int {
                    num: an * bd + bn * ad,
                    den: ad * bd,
                }
            }
            (RingElement::Cyc { num: an, den: ad }, RingElement::Cyc { num: bn, den: bd }) => {
                RingElement::Cyc {
                    num: cyclotomic::add(
                        &cyclotomic::scalar_mul(an, bd),
                        &cyclotomic::scalar_mul(bn, ad),
                    ),
                    den: ad * bd,
                }
            }
            (RingElement::Poly { num: an, den: ad }, RingElement::Poly { num: bn, den: bd }) => {
                use crate::exact_linalg::ExactScalar;
                RingElement::Poly {
                    num: an.mul(bd).add(&bn.mul(ad)),
                    den: ad.mul(bd),
                }
            }
            _ => panic!("mixed ring elements"),
        };
        self.canon(r)
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        match a {
            RingElement::Int { num, den } => RingElement::Int {
                num: -num,
                den: den.clone(),
            },
            RingElement::Cyc { num, den } => RingElement::Cyc {
                num: cyclotomic::neg(num),
                den: den.clone(),
            },
            RingElement::Poly { num, den } => {
                use crate::exact_linalg::ExactScalar;
                RingElement::Poly {
                    num: num.neg(),
                    den: den.clone(),
                }
            }
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let r = match (a, b) {
            (RingElement::Int { num: an, den: ad }, RingElement::Int { num: bn, den: bd }) => {
                RingElement::Int {
                    num: an * bn,
                    den: ad * bd,
                }
            }
            (RingElement::Cyc { num: an, den: ad }, RingElement::Cyc { num: bn, den: bd }) => {
                let p = self.param().expect("cyclotomic ring");
                RingElement::Cyc {
                    num: cyclotomic::mul(an, bn, p),
                    den: ad * bd,
                }
            }
            (RingElement::Poly { num: an, den: ad }, RingElement::Poly { num: bn, den: bd }) => {
                use crate::exact_linalg::ExactScalar;
                RingElement::Poly {
                    num: an.mul(bn),
                    den: ad.mul(bd),
                }
            }
            _ => panic!("mixed ring elements"),
        };
        self.canon(r)
    }

    pub fn pow(&self, a: &RingElement, mut e: u64) -> RingElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &RingElement) -> bool {
        match a {
            RingElement::Int { num, .. } => num.is_zero(),
            RingElement::Cyc { num, .. } => cyclotomic::is_zero(num),
            RingElement::Poly { num, .. } => num.coeffs.is_empty(),
        }
    }

    /// True iff `a` is invertible in this ring. In localized rings this is
    /// valuation zero; in ℤ[ζ_p] it is |Norm| = 1.
    pub fn is_unit(&self, a: &RingElement) -> bool {
        if self.is_zero(a) {
            return false;
        }
        match (self.kind, self.localization) {
            (RingKind::Integers, None) => match a {
                RingElement::Int { num, .. } => num.abs().is_one(),
                _ => unreachable!(),
            },
            (RingKind::Integers, Some(_)) | (RingKind::Cyclotomic { .. }, Some(_)) | (RingKind::PolyFp { .. }, Some(_)) => {
                self.valuation(a) == Some(0)
            }
            (RingKind::Cyclotomic { p }, None) => match a {
                RingElement::Cyc { num, den } => {
                    debug_assert!(den.is_one());
                    cyclotomic::norm(num, p).abs().is_one()
                }
                _ => unreachable!(),
            },
            (RingKind::PolyFp { .. }, None) => match a {
                RingElement::Poly { num, .. } => num.degree() == Some(0),
                _ => unreachable!(),
            },
        }
    }

    /// Valuation at the ring's designated prime; `None` is +∞ (only for 0).
    ///
    /// For ℤ the designated prime exists only in the localized ring; for
    /// ℤ[ζ_p] it is always π = ζ - 1 and for F_p[t] it is always (t).
    pub fn valuation(&self, a: &RingElement) -> Option<u64> {
        if self.is_zero(a) {
            return None;
        }
        match (a, self.kind) {
            (RingElement::Int { num, .. }, RingKind::Integers) => {
                let q = match self.localization {
                    Some(Localization::RationalPrime(q)) => BigInt::from(q),
                    _ => panic!("unlocalized Z has no designated prime"),
                };
                let mut v = 0u64;
                let mut n = num.clone();
                while (&n % &q).is_zero() {
                    n /= &q;
                    v += 1;
                }
                Some(v)
            }
            (RingElement::Cyc { num, .. }, RingKind::Cyclotomic { p }) => {
                cyclotomic::pi_valuation(num, p)
            }
            (RingElement::Poly { num, .. }, RingKind::PolyFp { .. }) => {
                num.t_valuation().map(|v| v as u64)
            }
            _ => panic!("element does not belong to ring"),
        }
    }

    /// Exact division a / b within the ring; `None` if the quotient does
    /// not lie in the ring.
    pub fn exact_div(&self, a: &RingElement, b: &RingElement) -> Option<RingElement> {
        if self.is_zero(b) {
            return None;
        }
        if self.is_zero(a) {
            return Some(self.zero());
        }
        let q = match (a, b) {
            (RingElement::Int { num: an, den: ad }, RingElement::Int { num: bn, den: bd }) => {
                self.canon(RingElement::Int {
                    num: an * bd,
                    den: ad * bn,
                })
            }
            (RingElement::Cyc { num: an, den: ad }, RingElement::Cyc { num: bn, den: bd }) => {
                let p = self.param().expect("cyclotomic");
                // Rationalize: 1/b = conj(b)/Norm(b).
                let mut conj = cyclotomic::from_int(p, &BigInt::one());
                for k in 2..p {
                    conj = cyclotomic::mul(&conj, &cyclotomic::galois(bn, k, p), p);
                }
                let nrm = cyclotomic::norm(bn, p);
                let num = cyclotomic::scalar_mul(&cyclotomic::mul(an, &conj, p), bd);
                let mut den = ad * nrm;
                let mut num = num;
                if den.is_negative() {
                    num = cyclotomic::neg(&num);
                    den = -den;
                }
                // Strip the p-part of the denominator coefficientwise.
                let bp = BigInt::from(p);
                loop {
                    let (dq, dr) = den.div_rem(&bp);
                    if !dr.is_zero() {
                        break;
                    }
                    let mut ok = true;
                    let mut next = Vec::with_capacity(num.len());
                    for c in &num {
                        let (cq, cr) = c.div_rem(&bp);
                        if !cr.is_zero() {
                            ok = false;
                            break;
                        }
                        next.push(cq);
                    }
                    if !ok {
                        // Not divisible coefficientwise: fall back to π-division,
                        // p = unit * π^{p-1}.
                        let mut cur = num.clone();
                        let mut success = true;
                        for _ in 0..p - 1 {
                            match cyclotomic::div_by_pi(&cur, p) {
                                Some(nn) => cur = nn,
                                None => {
                                    success = false;
                                    break;
                                }
                            }
                        }
                        if !success {
                            return None;
                        }
                        // π^{p-1} = p * u with u a unit; divide the unit out:
                        // num/p = (num/π^{p-1}) * u ... recompute directly below.
                        // Simpler: num/p must be integral iff π^{p-1} | num, and
                        // then num/p = cur * (π^{p-1}/p) where π^{p-1}/p is a unit.
                        let pi_pow = {
                            let pi = cyclotomic::sub(
                                &cyclotomic::zeta_pow(p, 1),
                                &cyclotomic::from_int(p, &BigInt::one()),
                            );
                            let mut acc = cyclotomic::from_int(p, &BigInt::one());
                            for _ in 0..p - 1 {
                                acc = cyclotomic::mul(&acc, &pi, p);
                            }
                            acc
                        };
                        let unit: Vec<BigInt> = {
                            let mut u = Vec::with_capacity(pi_pow.len());
                            for c in &pi_pow {
                                let (cq, cr) = c.div_rem(&bp);
                                assert!(cr.is_zero(), "pi^(p-1) is divisible by p");
                                u.push(cq);
                            }
                            u
                        };
                        next = cyclotomic::mul(&cur, &unit, p);
                    }
                    num = next;
                    den = dq;
                }
                self.canon(RingElement::Cyc { num, den })
            }
            (RingElement::Poly { num: an, den: ad }, RingElement::Poly { num: bn, den: bd }) => {
                use crate::exact_linalg::ExactScalar;
                self.canon(RingElement::Poly {
                    num: an.mul(bd),
                    den: ad.mul(bn),
                })
            }
            _ => panic!("mixed ring elements"),
        };
        if self.in_ring(&q) {
            Some(q)
        } else {
            None
        }
    }

    /// Inverse of a unit.
    pub fn inv_unit(&self, a: &RingElement) -> Result<RingElement> {
        if !self.is_unit(a) {
            return Err(Error::NotInvertible);
        }
        Ok(self
            .exact_div(&self.one(), a)
            .expect("unit division is exact"))
    }

    // -- parsing and display ---------------------------------------------------

    /// Parse an element given as an integer polynomial expression in the
    /// ring's symbol ("z" for cyclotomic, "t" for F_p[t]; plain integers
    /// for ℤ).
    pub fn parse(&self, s: &str) -> Result<RingElement> {
        let coeffs = parse_int_poly(s, self.symbol())?;
        Ok(self.from_poly_coeffs(&coeffs))
    }

    fn symbol(&self) -> char {
        match self.kind {
            RingKind::Integers => 'x',
            RingKind::Cyclotomic { .. } => 'z',
            RingKind::PolyFp { .. } => 't',
        }
    }

    /// Build an element from integer coefficients c_0 + c_1 s + c_2 s^2 ...
    pub fn from_poly_coeffs(&self, coeffs: &[BigInt]) -> RingElement {
        match self.kind {
            RingKind::Integers => {
                assert!(
                    coeffs.len() <= 1,
                    "integers admit no polynomial generator"
                );
                self.from_int(coeffs.first().unwrap_or(&BigInt::zero()))
            }
            RingKind::Cyclotomic { p } => self.canon(RingElement::Cyc {
                num: cyclotomic::reduce(coeffs, p),
                den: BigInt::one(),
            }),
            RingKind::PolyFp { p } => {
                let pp = BigInt::from(p);
                let cs: Vec<u64> = coeffs
                    .iter()
                    .map(|c| {
                        let r = c.mod_floor(&pp);
                        r.try_into().expect("residue fits")
                    })
                    .collect();
                self.canon(RingElement::Poly {
                    num: FpPoly::new(p, cs),
                    den: FpPoly::constant(p, 1),
                })
            }
        }
    }

    pub fn display(&self, a: &RingElement) -> String {
        match a {
            RingElement::Int { num, den } => {
                if den.is_one() {
                    format!("{num}")
                } else {
                    format!("{num}/{den}")
                }
            }
            RingElement::Cyc { num, den } => {
                let poly = display_int_poly(num, 'z');
                if den.is_one() {
                    poly
                } else {
                    format!("({poly})/{den}")
                }
            }
            RingElement::Poly { num, den } => {
                let poly = num.display("t");
                if den.is_unit_s() {
                    poly
                } else {
                    format!("({poly})/({})", den.display("t"))
                }
            }
        }
    }
}

// Small shim so canon() can ask is_zero/is_unit of FpPoly without importing
// the ExactScalar trait at every call site.
trait ExactScalarIsZero {
    fn is_zero_s(&self) -> bool;
    fn is_unit_s(&self) -> bool;
}
impl ExactScalarIsZero for FpPoly {
    fn is_zero_s(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn is_unit_s(&self) -> bool {
        self.coeffs.len() == 1
    }
}

/// Render integer polynomial coefficients (constant first) in `var`.
pub fn display_int_poly_pub(coeffs: &[BigInt], var: char) -> String {
    display_int_poly(coeffs, var)
}

fn display_int_poly(coeffs: &[BigInt], var: char) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let body = match i {
            0 => format!("{c}"),
            1 if c.is_one() => var.to_string(),
            1 if (-c).is_one() => format!("-{var}"),
            1 => format!("{c}*{var}"),
            _ if c.is_one() => format!("{var}^{i}"),
            _ if (-c).is_one() => format!("-{var}^{i}"),
            _ => format!("{c}*{var}^{i}"),
        };
        if parts.is_empty() {
            parts.push(body);
        } else if body.starts_with('-') {
            parts.push(format!("- {}", &body[1..]));
        } else {
            parts.push(format!("+ {body}"));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

/// Parse an integer polynomial expression in one variable: terms like
/// `-2*z^3 + z - 5`, whitespace-insensitive.
pub fn parse_int_poly(s: &str, var: char) -> Result<Vec<BigInt>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::InvalidInput("empty expression".into()));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let bytes = compact.as_bytes();
    let mut i = 0usize;
    let mut sign = BigInt::one();
    let mut expect_term = true;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c == '+' || c == '-' {
            if expect_term && c == '-' {
                sign = -sign;
                i += 1;
                continue;
            }
            sign = if c == '-' { -BigInt::one() } else { BigInt::one() };
            i += 1;
            expect_term = true;
            continue;
        }
        // term: [INT][*][var[^INT]]
        let mut coeff = BigInt::one();
        let mut saw_digit = false;
        let start = i;
        while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
            i += 1;
            saw_digit = true;
        }
        if saw_digit {
            coeff = compact[start..i]
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("bad integer in {s:?}")))?;
        }
        if i < bytes.len() && bytes[i] as char == '*' {
            i += 1;
        }
        let mut exp = 0usize;
        if i < bytes.len() && bytes[i] as char == var {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] as char == '^' {
                i += 1;
                let es = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return Err(Error::InvalidInput(format!("missing exponent in {s:?}")));
                }
                exp = compact[es..i]
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad exponent in {s:?}")))?;
            }
        } else if !saw_digit {
            return Err(Error::InvalidInput(format!(
                "unexpected character {:?} in {s:?}",
                c
            )));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += &sign * &coeff;
        sign = BigInt::one();
        expect_term = false;
    }
    Ok(coeffs)
}

// ---------------------------------------------------------------------------
// Spec-level operations.
// ---------------------------------------------------------------------------

/// Canonical representative of an integer polynomial in ζ modulo Φ_p.
pub fn reduce_cyclotomic(coeffs: &[BigInt], p: u64) -> Result<RingElement> {
    let ring = CoeffRing::cyclotomic(p)?;
    Ok(ring.from_poly_coeffs(coeffs))
}

/// π-adic (resp. q-adic, t-adic) valuation of `x`; `None` encodes +∞.
pub fn pi_adic_valuation(x: &RingElement, ring: &CoeffRing) -> Option<u64> {
    ring.valuation(x)
}

/// Unit u with ζ^i - 1 = u (ζ^j - 1), computed as the geometric sum
/// 1 + ζ^j + ... + ζ^{(k-1)j} for k = i j^{-1} mod p.
pub fn unit_ratio_of_roots(i: u64, j: u64, p: u64) -> Result<RingElement> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidConductor(p));
    }
    if i == 0 || j == 0 || i >= p || j >= p {
        return Err(Error::PreconditionFailed(format!(
            "exponents must satisfy 1 <= i, j <= p-1, got i={i} j={j}"
        )));
    }
    let ring = CoeffRing::cyclotomic(p)?;
    let k = (i as u128 * fppoly::invmod(j, p) as u128 % p as u128) as u64;
    let mut acc = ring.zero();
    for s in 0..k {
        acc = ring.add(&acc, &ring.zeta_pow(j * s % p));
    }
    // Exact verification of ζ^i - 1 = u (ζ^j - 1).
    let lhs = ring.sub(&ring.zeta_pow(i), &ring.one());
    let rhs = ring.mul(&acc, &ring.sub(&ring.zeta_pow(j), &ring.one()));
    assert_eq!(lhs, rhs, "geometric-sum identity");
    assert!(ring.is_unit(&acc), "ratio of roots must be a unit");
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn reduce_cyclotomic_examples() {
        // ζ^3 = 1 at p = 3.
        let r = reduce_cyclotomic(&[bi(0), bi(0), bi(0), bi(1)], 3).unwrap();
        let ring = CoeffRing::cyclotomic(3).unwrap();
        assert_eq!(r, ring.one());
        // 1 + ζ + ζ^2 = 0 at p = 3.
        let r = reduce_cyclotomic(&[bi(1), bi(1), bi(1)], 3).unwrap();
        assert!(ring.is_zero(&r));
        // ζ^4 = -1 - ζ - ζ^2 - ζ^3 at p = 5.
        let r = reduce_cyclotomic(&[bi(0), bi(0), bi(0), bi(0), bi(1)], 5).unwrap();
        assert_eq!(
            r,
            RingElement::Cyc {
                num: vec![bi(-1), bi(-1), bi(-1), bi(-1)],
                den: bi(1)
            }
        );
        assert!(matches!(
            reduce_cyclotomic(&[bi(1)], 4),
            Err(Error::InvalidConductor(4))
        ));
    }

    #[test]
    fn valuation_examples() {
        let ring = CoeffRing::cyclotomic_localized(3).unwrap();
        let pi = ring.prime_element();
        assert_eq!(pi_adic_valuation(&pi, &ring), Some(1));
        assert_eq!(pi_adic_valuation(&ring.from_i64(3), &ring), Some(2));
        assert_eq!(pi_adic_valuation(&ring.zero(), &ring), None);
        // Every primitive root: v(ξ - 1) = 1.
        for p in [3u64, 5, 7, 11] {
            let ring = CoeffRing::cyclotomic_localized(p).unwrap();
            for i in 1..p {
                let xi_minus_1 = ring.sub(&ring.zeta_pow(i), &ring.one());
                assert_eq!(pi_adic_valuation(&xi_minus_1, &ring), Some(1), "p={p} i={i}");
            }
        }
    }

    #[test]
    fn unit_examples() {
        let r3 = CoeffRing::cyclotomic(3).unwrap();
        // Norm(ζ + 1) = Φ_3(-1) = 1: a unit.
        let u = r3.add(&r3.zeta(), &r3.one());
        assert!(r3.is_unit(&u));
        // ζ - 1 is not a unit in the localized ring (valuation 1).
        let r3l = CoeffRing::cyclotomic_localized(3).unwrap();
        assert!(!r3l.is_unit(&r3l.prime_element()));
        assert!(r3.is_unit(&r3.one()));
        // Localized dichotomy: unit xor positive valuation, for nonzero x.
        let xs = [r3l.zeta(), r3l.prime_element(), r3l.from_i64(5), r3l.from_i64(6)];
        for x in &xs {
            let u = r3l.is_unit(x);
            let v = r3l.valuation(x).unwrap() >= 1;
            assert!(u ^ v, "unit xor positive valuation for {}", r3l.display(x));
        }
    }

    #[test]
    fn unit_ratio_examples() {
        let r3 = CoeffRing::cyclotomic(3).unwrap();
        // ζ^2 - 1 = (ζ + 1)(ζ - 1).
        assert_eq!(
            unit_ratio_of_roots(2, 1, 3).unwrap(),
            r3.add(&r3.zeta(), &r3.one())
        );
        assert_eq!(unit_ratio_of_roots(1, 1, 7).unwrap(), CoeffRing::cyclotomic(7).unwrap().one());
        let r5 = CoeffRing::cyclotomic(5).unwrap();
        let expected = r5.add(&r5.add(&r5.pow(&r5.zeta(), 2), &r5.zeta()), &r5.one());
        assert_eq!(unit_ratio_of_roots(3, 1, 5).unwrap(), expected);
    }

    #[test]
    fn localized_fraction_arithmetic() {
        let r = CoeffRing::integers_localized(3).unwrap();
        let half = r.exact_div(&r.one(), &r.from_i64(2)).unwrap();
        assert_eq!(r.display(&half), "1/2");
        let one = r.mul(&half, &r.from_i64(2));
        assert_eq!(one, r.one());
        // 1/3 does not exist at the localized prime.
        assert!(r.exact_div(&r.one(), &r.from_i64(3)).is_none());

        // F_3[t] localized at t: 1/(t+1) fine, 1/t not.
        let rp = CoeffRing::poly_fp_localized(3).unwrap();
        let t = rp.prime_element();
        let t_plus_1 = rp.add(&t, &rp.one());
        assert!(rp.exact_div(&rp.one(), &t_plus_1).is_some());
        assert!(rp.exact_div(&rp.one(), &t).is_none());
    }

    #[test]
    fn cyclotomic_division_strips_p_denominator() {
        // (ζ-1)^2 / 3 is a unit in Z[ζ_3] (localized or not the quotient
        // exists: pi^2 = 3 * unit).
        let r = CoeffRing::cyclotomic(3).unwrap();
        let pi2 = r.pow(&r.prime_element(), 2);
        let q = r.exact_div(&pi2, &r.from_i64(3)).unwrap();
        assert!(r.is_unit(&q));
        // And pi / 3 is not in the ring.
        assert!(r.exact_div(&r.prime_element(), &r.from_i64(3)).is_none());
        // Unit inversion round-trips.
        let u = r.add(&r.zeta(), &r.one());
        let ui = r.inv_unit(&u).unwrap();
        assert_eq!(r.mul(&u, &ui), r.one());
    }

    #[test]
    fn parser_roundtrip() {
        let r = CoeffRing::cyclotomic(5).unwrap();
        let x = r.parse("2*z^3 - z + 1").unwrap();
        let manual = r.add(
            &r.sub(&r.mul(&r.from_i64(2), &r.pow(&r.zeta(), 3)), &r.zeta()),
            &r.one(),
        );
        assert_eq!(x, manual);
        // ζ^6 reduces at p = 5: same as ζ.
        assert_eq!(r.parse("z^6").unwrap(), r.zeta());
        assert!(r.parse("z^").is_err());
        assert!(r.parse("w+1").is_err());

        let ri = CoeffRing::integers();
        assert_eq!(ri.parse("-42").unwrap(), ri.from_i64(-42));
    }

    proptest::proptest! {
        #[test]
        fn prop_reduce_is_ring_hom(a in proptest::collection::vec(-20i64..21, 1..9),
                                   b in proptest::collection::vec(-20i64..21, 1..9)) {
            // reduce(a*b) = reduce(a)*reduce(b) and reduce is idempotent.
            let p = 5u64;
            let ring = CoeffRing::cyclotomic(p).unwrap();
            let av: Vec<BigInt> = a.iter().map(|&x| bi(x)).collect();
            let bv: Vec<BigInt> = b.iter().map(|&x| bi(x)).collect();
            let mut prod = vec![bi(0); av.len() + bv.len() - 1];
            for (i, x) in av.iter().enumerate() {
                for (j, y) in bv.iter().enumerate() {
                    prod[i + j] += x * y;
                }
            }
            let lhs = ring.from_poly_coeffs(&prod);
            let rhs = ring.mul(&ring.from_poly_coeffs(&av), &ring.from_poly_coeffs(&bv));
            proptest::prop_assert_eq!(lhs.clone(), rhs);
            // Idempotence: re-reducing the reduced representative is a no-op.
            if let RingElement::Cyc { num, .. } = &lhs {
                let again = ring.from_poly_coeffs(num);
                proptest::prop_assert_eq!(lhs.clone(), again);
            }
            // Sums too.
            let mut sum = vec![bi(0); av.len().max(bv.len())];
            for (i, x) in av.iter().enumerate() { sum[i] += x; }
            for (j, y) in bv.iter().enumerate() { sum[j] += y; }
            let lhs = ring.from_poly_coeffs(&sum);
            let rhs = ring.add(&ring.from_poly_coeffs(&av), &ring.from_poly_coeffs(&bv));
            proptest::prop_assert_eq!(lhs, rhs);
        }
    }
}
