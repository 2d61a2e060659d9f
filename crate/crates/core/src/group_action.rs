//! Finite matrix groups over a [`CoeffRing`] and their induced action on
//! the graded pieces of A[X_1, ..., X_n].
//!
//! The linear action uses the column convention g·X_j = Σ_i g_{ij} X_i,
//! applied everywhere; monomial bases are lexicographic with X_1
//! greatest.

use crate::coeff_rings::{CoeffRing, RingElement};
use crate::error::{Error, Result};
use crate::polynomial::{monomials, MultiPoly};
use crate::ring_matrix::RingMatrix;

/// Invertible matrix with its inverse cached at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub mat: RingMatrix,
    pub inv: RingMatrix,
}

impl GroupElement {
    pub fn new(ring: &CoeffRing, mat: RingMatrix) -> Result<Self> {
        let inv = mat.inverse(ring).map_err(|_| Error::NotInvertible)?;
        Ok(GroupElement { mat, inv })
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn is_identity(&self, ring: &CoeffRing) -> bool {
        self.mat.is_identity(ring)
    }
}

/// Explicit finite subgroup of GL_n over the coefficient ring.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    pub ring: CoeffRing,
    pub n: usize,
    pub generators: Vec<GroupElement>,
    /// Full element list; `elements[0]` is the identity.
    pub elements: Vec<GroupElement>,
    pub order: usize,
    pub exponent: u64,
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, m: &RingMatrix) -> bool {
        self.elements.iter().any(|e| e.mat == *m)
    }

    /// Multiplicative order of one element (the group is finite, so this
    /// terminates within `order` steps).
    pub fn element_order(&self, ring: &CoeffRing, g: &GroupElement) -> u64 {
        element_order_bounded(ring, &g.mat, self.order as u64 + 1)
            .expect("element of a finite group has finite order")
    }

    /// A generator when the group is cyclic.
    pub fn cyclic_generator(&self, ring: &CoeffRing) -> Option<GroupElement> {
        self.elements
            .iter()
            .find(|g| self.element_order(ring, g) == self.order as u64)
            .cloned()
    }

    pub fn is_subgroup_of(&self, other: &FiniteMatrixGroup) -> bool {
        self.elements.iter().all(|e| other.contains(&e.mat))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        is_p_power(self.order as u64, p)
    }
}

fn element_order_bounded(ring: &CoeffRing, m: &RingMatrix, bound: u64) -> Option<u64> {
    let mut acc = m.clone();
    for k in 1..=bound {
        if acc.is_identity(ring) {
            return Some(k);
        }
        acc = acc.mul(ring, m);
    }
    None
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
    a / gcd(a, b) * b
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Breadth-first closure of the generators under multiplication.
///
/// Errors with `BoundExceeded` when the closure grows past `bound`
/// (e.g. for a generator of infinite order).
pub fn generate_closure(
    ring: &CoeffRing,
    gens: Vec<RingMatrix>,
    bound: usize,
) -> Result<FiniteMatrixGroup> {
    if gens.is_empty() {
        return Err(Error::InvalidInput("at least one generator required".into()));
    }
    let n = gens[0].rows();
    for g in &gens {
        if g.rows() != n || g.cols() != n {
            return Err(Error::InvalidInput(
                "generators must be square of equal size".into(),
            ));
        }
    }
    let generators: Vec<GroupElement> = gens
        .into_iter()
        .map(|m| GroupElement::new(ring, m))
        .collect::<Result<_>>()?;

    let id = RingMatrix::identity(ring, n);
    let mut elements: Vec<RingMatrix> = vec![id];
    let mut head = 0usize;
    while head < elements.len() {
        let cur = elements[head].clone();
        head += 1;
        for g in &generators {
            let next = cur.mul(ring, &g.mat);
            if !elements.iter().any(|e| *e == next) {
                if elements.len() >= bound {
                    return Err(Error::BoundExceeded(bound));
                }
                elements.push(next);
            }
        }
    }

    let elements: Vec<GroupElement> = elements
        .into_iter()
        .map(|m| GroupElement::new(ring, m))
        .collect::<Result<_>>()?;
    let order = elements.len();

    // Group sanity: closed under inverse.
    for e in &elements {
        debug_assert!(
            elements.iter().any(|f| f.mat == e.inv),
            "closure must contain inverses"
        );
    }

    let mut exponent = 1u64;
    for e in &elements {
        let o = element_order_bounded(ring, &e.mat, order as u64)
            .expect("closure elements have bounded order");
        exponent = lcm_u64(exponent, o);
    }
    debug_assert_eq!(order as u64 % exponent, 0, "exponent divides order");

    Ok(FiniteMatrixGroup {
        ring: *ring,
        n,
        generators,
        elements,
        order,
        exponent,
    })
}

/// A Sylow p-subgroup, found by greedily growing a p-subgroup by elements
/// of p-power order: a maximal p-subgroup is Sylow. Desk bound |G| ≤ 64.
pub fn sylow_subgroup(
    ring: &CoeffRing,
    group: &FiniteMatrixGroup,
    p: u64,
) -> Result<FiniteMatrixGroup> {
    if group.order > 64 {
        return Err(Error::DeskBoundExceeded(format!(
            "sylow search needs |G| <= 64, got {}",
            group.order
        )));
    }
    let mut p_part = 1usize;
    let mut m = group.order;
    while m % p as usize == 0 {
        m /= p as usize;
        p_part *= p as usize;
    }
    if p_part == 1 {
        return Err(Error::PreconditionFailed(format!(
            "{p} does not divide |G| = {}",
            group.order
        )));
    }

    let candidates: Vec<&GroupElement> = group
        .elements
        .iter()
        .filter(|e| is_p_power(group.element_order(ring, e), p))
        .collect();

    let mut sub = generate_closure(ring, vec![RingMatrix::identity(ring, group.n)], group.order)?;
    while sub.order != p_part {
        let mut grew = false;
        for cand in &candidates {
            if sub.contains(&cand.mat) {
                continue;
            }
            let mut gens: Vec<RingMatrix> =
                sub.generators.iter().map(|g| g.mat.clone()).collect();
            gens.push(cand.mat.clone());
            let bigger = generate_closure(ring, gens, group.order)?;
            if is_p_power(bigger.order as u64, p) {
                sub = bigger;
                grew = true;
                break;
            }
        }
        if !grew {
            return Err(Error::PreconditionFailed(format!(
                "maximal p-subgroup found has order {} != p-part {}",
                sub.order, p_part
            )));
        }
    }
    Ok(sub)
}

/// Matrix of g on the rank-C(n+d-1, d) module of degree-d monomials, in
/// the descending-lex basis. Sym^0(g) = [1], Sym^1(g) = g, and Sym^d is
/// multiplicative.
pub fn symmetric_power_matrix(ring: &CoeffRing, g: &RingMatrix, d: u32) -> RingMatrix {
    let n = g.rows();
    assert_eq!(n, g.cols());
    let mons = monomials(n, d);
    let mut out = RingMatrix::zero(ring, mons.len(), mons.len());
    for (j, e) in mons.iter().enumerate() {
        let mono = MultiPoly::monomial(ring, n, e.clone(), ring.one());
        let image = mono.apply_matrix(ring, g);
        let coords = image.coeff_vector(ring, d);
        for (i, c) in coords.into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    out
}

/// Kernel of the reduction map G → Aut(R/πR): the subgroup of elements
/// congruent to the identity mod the localized prime.
pub fn reduction_kernel(ring: &CoeffRing, group: &FiniteMatrixGroup) -> Result<FiniteMatrixGroup> {
    if !ring.is_localized() {
        return Err(Error::PreconditionFailed(
            "reduction kernel needs a localized coefficient ring".into(),
        ));
    }
    let id = RingMatrix::identity(ring, group.n);
    let in_kernel = |m: &RingMatrix| -> bool {
        let diff = m.sub(ring, &id);
        diff.entries()
            .iter()
            .all(|e| ring.is_zero(e) || ring.valuation(e).map_or(true, |v| v >= 1))
    };
    let gens: Vec<RingMatrix> = group
        .elements
        .iter()
        .filter(|e| in_kernel(&e.mat))
        .map(|e| e.mat.clone())
        .collect();
    let gens = if gens.is_empty() { vec![id] } else { gens };
    generate_closure(ring, gens, group.order)
}

/// Parse a generator matrix from string entries (integers, or polynomial
/// expressions in the ring's symbol).
pub fn matrix_from_entries(ring: &CoeffRing, rows: &[Vec<String>]) -> Result<RingMatrix> {
    let parsed: Vec<Vec<RingElement>> = rows
        .iter()
        .map(|row| row.iter().map(|s| ring.parse(s)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Ok(RingMatrix::from_rows(parsed))
}
