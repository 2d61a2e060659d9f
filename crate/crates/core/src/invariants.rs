//! Degree-by-degree invariants of a finite matrix group acting on
//! A[X_1, ..., X_n]: saturated invariant lattices, the transfer map,
//! Hilbert functions with a Molien cross-check, and algebra generators.
//!
//! Cyclotomic coefficient rings are handled by restriction of scalars to
//! ℤ followed by reassembly of the O-module structure, so the single
//! normal-form engine serves every base ring.

use crate::coeff_rings::{cyclotomic, CoeffRing, RingElement, RingKind};
use crate::error::{Error, Result};
use crate::exact_linalg::{kernel_basis, LatticeSolver, Matrix};
use crate::group_action::{symmetric_power_matrix, FiniteMatrixGroup};
use crate::polynomial::{monomial_count, MultiPoly};
use crate::ring_matrix::{
    self, int_model_to_vec, model_block, poly_model_to_vec, to_int_model, to_poly_model,
    RingMatrix,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Basis data for one degree.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub monomial_rank: usize,
    /// O-basis of the invariant lattice, coordinates in the monomial basis.
    pub basis: Vec<Vec<RingElement>>,
}

/// Invariant lattices of all degrees up to a bound.
#[derive(Clone, Debug)]
pub struct GradedInvariantData {
    pub ring: CoeffRing,
    pub nvars: usize,
    pub group_order: usize,
    pub max_degree: u32,
    pub degrees: Vec<DegreeBasis>,
}

impl GradedInvariantData {
    pub fn rank(&self, d: u32) -> usize {
        self.degrees[d as usize].basis.len()
    }

    pub fn basis_poly(&self, d: u32, i: usize) -> MultiPoly {
        MultiPoly::from_coeff_vector(
            &self.ring,
            self.nvars,
            d,
            &self.degrees[d as usize].basis[i],
        )
    }

    pub fn basis_polys(&self, d: u32) -> Vec<MultiPoly> {
        (0..self.rank(d)).map(|i| self.basis_poly(d, i)).collect()
    }
}

/// Hilbert function coefficients h_0..h_D (ranks over the base ring),
/// with the rational closed form filled in once a freeness certificate
/// exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertFunctionData {
    pub coefficients: Vec<usize>,
    pub closed_form: Option<HilbertClosedForm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertClosedForm {
    /// Degrees of the module generators (numerator Σ t^e).
    pub numerator_degrees: Vec<u32>,
    /// Degrees (d_1, d_2) of the parameter system (denominator).
    pub denominator_degrees: (u32, u32),
}

/// Basis of the full invariant lattice (R_d)^G, as coordinate vectors in
/// the degree-d monomial basis.
pub fn invariant_basis_vectors(
    ring: &CoeffRing,
    group: &FiniteMatrixGroup,
    d: u32,
) -> Result<Vec<Vec<RingElement>>> {
    let n = group.n;
    let rank = monomial_count(n, d);
    // Stack Sym^d(g) - I over the generators.
    let mut rows: Vec<Vec<RingElement>> = Vec::new();
    for g in &group.generators {
        let sym = symmetric_power_matrix(ring, &g.mat, d);
        let id = RingMatrix::identity(ring, rank);
        let diff = sym.sub(ring, &id);
        for i in 0..rank {
            rows.push((0..rank).map(|j| diff.get(i, j).clone()).collect());
        }
    }
    let stacked = RingMatrix::from_rows(rows);

    let mut basis = if ring_matrix::is_poly_model(ring) {
        let (pm, _) = to_poly_model(ring, &stacked);
        kernel_basis(&pm)
            .into_iter()
            .map(|v| poly_model_to_vec(ring, &v))
            .collect::<Vec<_>>()
    } else {
        let (im, _) = to_int_model(ring, &stacked);
        let zbasis = kernel_basis(&im);
        reassemble_int_obasis(ring, rank, zbasis)?
    };

    sort_basis_canonically(ring, &mut basis);

    // Exact invariance check for every generator.
    for g in &group.generators {
        let sym = symmetric_power_matrix(ring, &g.mat, d);
        for v in &basis {
            let gv = sym.mul_vec(ring, v);
            assert_eq!(&gv, v, "invariant basis vector must be fixed exactly");
        }
    }
    Ok(basis)
}

/// Multiply each (p-1)-block of a model vector by ζ.
pub(crate) fn zeta_shift_model(v: &[BigInt], p: u64) -> Vec<BigInt> {
    let block = (p - 1) as usize;
    assert_eq!(v.len() % block, 0);
    let zeta = cyclotomic::zeta_pow(p, 1);
    let mut out = Vec::with_capacity(v.len());
    for chunk in v.chunks(block) {
        out.extend(cyclotomic::mul(chunk, &zeta, p));
    }
    out
}

/// Reassemble an O-basis from a saturated ℤ-kernel basis.
///
/// Greedy selection with O-span membership, verified; for localized
/// cyclotomic rings a valuation-pivot column echelon over the DVR is the
/// fallback when greediness fails to produce a free family.
fn reassemble_int_obasis(
    ring: &CoeffRing,
    ocols: usize,
    zbasis: Vec<Vec<BigInt>>,
) -> Result<Vec<Vec<RingElement>>> {
    let block = model_block(ring);
    if block == 1 {
        return Ok(zbasis
            .into_iter()
            .map(|v| int_model_to_vec(ring, &v))
            .collect());
    }
    let p = ring.param().expect("cyclotomic ring");
    let zrank = zbasis.len();
    assert_eq!(zrank % block, 0, "restricted rank is a multiple of p-1");
    let orank = zrank / block;
    let dim = ocols * block;

    if let Some(chosen) = greedy_obasis(&zbasis, dim, p, block, orank) {
        return Ok(chosen
            .into_iter()
            .map(|v| int_model_to_vec(ring, &v))
            .collect());
    }
    if ring.is_localized() {
        let ovecs: Vec<Vec<RingElement>> = zbasis
            .iter()
            .map(|v| int_model_to_vec(ring, v))
            .collect();
        let basis = dvr_column_echelon(ring, ocols, ovecs);
        if basis.len() == orank {
            return Ok(basis);
        }
    }
    Err(Error::PreconditionFailed(
        "could not reassemble a free O-basis from the restricted kernel".into(),
    ))
}

fn greedy_obasis(
    zbasis: &[Vec<BigInt>],
    dim: usize,
    p: u64,
    block: usize,
    orank: usize,
) -> Option<Vec<Vec<BigInt>>> {
    let mut chosen: Vec<Vec<BigInt>> = Vec::new();
    let mut span_cols: Vec<Vec<BigInt>> = Vec::new();
    let mut solver: Option<LatticeSolver<BigInt>> = None;
    for v in zbasis {
        let member = match &solver {
            None => v.iter().all(|x| x.is_zero()),
            Some(s) => s.solve(v).is_some(),
        };
        if member {
            continue;
        }
        chosen.push(v.clone());
        let mut w = v.clone();
        for _ in 0..block {
            span_cols.push(w.clone());
            w = zeta_shift_model(&w, p);
        }
        solver = Some(LatticeSolver::new(&Matrix::from_cols(
            dim,
            span_cols.clone(),
        )));
    }
    if chosen.len() != orank {
        return None;
    }
    // The O-span of the chosen vectors must recover every kernel basis
    // vector integrally.
    let s = solver.as_ref()?;
    for v in zbasis {
        s.solve(v)?;
    }
    Some(chosen)
}

/// Column echelon over a DVR: pivot on minimal valuation, clear the pivot
/// row from the other columns by exact division. The nonzero columns
/// returned form an O-basis of the column span.
fn dvr_column_echelon(
    ring: &CoeffRing,
    nrows: usize,
    mut cols: Vec<Vec<RingElement>>,
) -> Vec<Vec<RingElement>> {
    let mut done: Vec<Vec<RingElement>> = Vec::new();
    let mut used_rows: Vec<usize> = Vec::new();
    loop {
        // Minimal-valuation entry over unused rows.
        let mut best: Option<(u64, usize, usize)> = None;
        for (ci, col) in cols.iter().enumerate() {
            for r in 0..nrows {
                if used_rows.contains(&r) {
                    continue;
                }
                if let Some(v) = ring.valuation(&col[r]) {
                    if best.map_or(true, |(bv, br, bc)| (v, r, ci) < (bv, br, bc)) {
                        best = Some((v, r, ci));
                    }
                }
            }
        }
        let Some((_, prow, pcol)) = best else { break };
        let pivot_col = cols.swap_remove(pcol);
        let pivot = pivot_col[prow].clone();
        for col in cols.iter_mut() {
            if ring.is_zero(&col[prow]) {
                continue;
            }
            let q = ring
                .exact_div(&col[prow], &pivot)
                .expect("pivot has minimal valuation");
            for r in 0..nrows {
                let sub = ring.mul(&q, &pivot_col[r]);
                col[r] = ring.sub(&col[r], &sub);
            }
        }
        done.push(pivot_col);
        used_rows.push(prow);
        cols.retain(|c| c.iter().any(|x| !ring.is_zero(x)));
        if cols.is_empty() {
            break;
        }
    }
    done
}

fn sort_basis_canonically(ring: &CoeffRing, basis: &mut [Vec<RingElement>]) {
    basis.sort_by_key(|v| basis_sort_key(ring, v));
}

fn basis_sort_key(ring: &CoeffRing, v: &[RingElement]) -> (Vec<usize>, Vec<String>) {
    let support: Vec<usize> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !ring.is_zero(c))
        .map(|(i, _)| i)
        .collect();
    let coeffs: Vec<String> = v.iter().map(|c| ring.display(c)).collect();
    (support, coeffs)
}

/// Invariant polynomials of degree d forming an O-basis of (R_d)^G.
pub fn invariants_in_degree(
    ring: &CoeffRing,
    group: &FiniteMatrixGroup,
    d: u32,
) -> Result<Vec<MultiPoly>> {
    let basis = invariant_basis_vectors(ring, group, d)?;
    Ok(basis
        .into_iter()
        .map(|v| MultiPoly::from_coeff_vector(ring, group.n, d, &v))
        .collect())
}

/// Invariant lattices for all degrees 0..=max_degree.
pub fn compute_invariants(
    ring: &CoeffRing,
    group: &FiniteMatrixGroup,
    max_degree: u32,
) -> Result<GradedInvariantData> {
    let mut degrees = Vec::with_capacity(max_degree as usize + 1);
    for d in 0..=max_degree {
        degrees.push(DegreeBasis {
            monomial_rank: monomial_count(group.n, d),
            basis: invariant_basis_vectors(ring, group, d)?,
        });
    }
    Ok(GradedInvariantData {
        ring: *ring,
        nvars: group.n,
        group_order: group.order,
        max_degree,
        degrees,
    })
}

/// Transfer (Reynolds-type averaging over cosets): r ↦ (1/[G:H]) Σ_{gH} g·r.
///
/// Requires r ∈ R^H and [G:H] invertible in the coefficient ring; the
/// result is G-invariant and restricts to the identity on R^G.
pub fn transfer(
    ring: &CoeffRing,
    r: &MultiPoly,
    group: &FiniteMatrixGroup,
    subgroup: &FiniteMatrixGroup,
) -> Result<MultiPoly> {
    if !subgroup.is_subgroup_of(group) {
        return Err(Error::PreconditionFailed("H is not a subgroup of G".into()));
    }
    // r must be H-invariant.
    for h in &subgroup.generators {
        if r.apply_matrix(ring, &h.mat) != *r {
            return Err(Error::NotHInvariant);
        }
    }
    let index = (group.order / subgroup.order) as u64;
    let index_elem = ring.from_i64(index as i64);
    if !ring.is_unit(&index_elem) {
        return Err(Error::IndexNotInvertible(index));
    }

    // Left coset representatives.
    let mut reps: Vec<&RingMatrix> = Vec::new();
    for g in &group.elements {
        let covered = reps.iter().any(|rep| {
            // g in rep·H  <=>  rep^{-1} g in H
            let repinv = rep
                .inverse(ring)
                .expect("group elements are invertible");
            subgroup.contains(&repinv.mul(ring, &g.mat))
        });
        if !covered {
            reps.push(&g.mat);
        }
    }
    assert_eq!(reps.len() as u64, index, "coset count equals the index");

    let mut acc = MultiPoly::zero(r.nvars);
    for rep in reps {
        acc = acc.add(ring, &r.apply_matrix(ring, rep));
    }
    let inv = ring.inv_unit(&index_elem)?;
    let out = acc.scalar_mul(ring, &inv);

    // The transfer lands in R^G.
    for g in &group.generators {
        debug_assert_eq!(out.apply_matrix(ring, &g.mat), out);
    }
    Ok(out)
}

/// Hilbert function h_d = rank_O (R_d)^G for d ≤ max_degree.
pub fn hilbert_function(
    ring: &CoeffRing,
    group: &FiniteMatrixGroup,
    max_degree: u32,
) -> Result<HilbertFunctionData> {
    let data = compute_invariants(ring, group, max_degree)?;
    Ok(hilbert_from_data(&data))
}

pub fn hilbert_from_data(data: &GradedInvariantData) -> HilbertFunctionData {
    HilbertFunctionData {
        coefficients: (0..=data.max_degree).map(|d| data.rank(d)).collect(),
        closed_form: None,
    }
}

/// Molien series coefficients of (1/|G|) Σ_g 1/det(1 - t g) through
/// degree D. Characteristic zero only; exact cyclotomic arithmetic.
pub fn molien_series(
    ring: &CoeffRing,
    group: &FiniteMatrixGroup,
    max_degree: u32,
) -> Result<Vec<BigInt>> {
    if !ring.characteristic_zero() {
        return Err(Error::CharacteristicPositive);
    }
    let trunc = max_degree as usize + 1;
    let mut total: Vec<RingElement> = vec![ring.zero(); trunc];
    for g in &group.elements {
        let det = det_one_minus_tg(ring, &g.mat, trunc);
        let inv = series_inverse(ring, &det, trunc);
        for (i, c) in inv.into_iter().enumerate() {
            total[i] = ring.add(&total[i], &c);
        }
    }
    let order = ring.from_i64(group.order as i64);
    let mut out = Vec::with_capacity(trunc);
    for c in total {
        let q = ring
            .exact_div(&c, &order)
            .expect("Molien coefficients are integral after averaging");
        out.push(ring_element_to_int(&q).expect("Molien coefficients are rational integers"));
    }
    Ok(out)
}

fn ring_element_to_int(x: &RingElement) -> Option<BigInt> {
    match x {
        RingElement::Int { num, den } => den.is_one().then(|| num.clone()),
        RingElement::Cyc { num, den } => {
            (den.is_one() && num[1..].iter().all(|c| c.is_zero())).then(|| num[0].clone())
        }
        RingElement::Poly { .. } => None,
    }
}

type TruncSeries = Vec<RingElement>;

fn ts_mul(ring: &CoeffRing, a: &TruncSeries, b: &TruncSeries, trunc: usize) -> TruncSeries {
    let mut out = vec![ring.zero(); trunc];
    for (i, x) in a.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= trunc {
                break;
            }
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    out
}

/// det(I - t g) as a truncated polynomial in t, by Laplace expansion over
/// the polynomial entries (n is tiny here).
fn det_one_minus_tg(ring: &CoeffRing, g: &RingMatrix, trunc: usize) -> TruncSeries {
    let n = g.rows();
    let entry = |i: usize, j: usize| -> TruncSeries {
        let mut e = vec![ring.zero(); trunc.max(2)];
        if i == j {
            e[0] = ring.one();
        }
        if trunc > 1 {
            e[1] = ring.neg(g.get(i, j));
        }
        e
    };
    let rows: Vec<Vec<TruncSeries>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    det_poly_rec(ring, &rows, (0..n).collect::<Vec<_>>().as_slice(), trunc)
}

fn det_poly_rec(
    ring: &CoeffRing,
    rows: &[Vec<TruncSeries>],
    cols: &[usize],
    trunc: usize,
) -> TruncSeries {
    let r = rows.len() - cols.len();
    if cols.is_empty() {
        let mut one = vec![ring.zero(); trunc];
        one[0] = ring.one();
        return one;
    }
    let mut acc = vec![ring.zero(); trunc];
    for (k, &j) in cols.iter().enumerate() {
        let e = &rows[r][j];
        if e.iter().all(|c| ring.is_zero(c)) {
            continue;
        }
        let rest: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&c| c != j)
            .collect();
        let sub = det_poly_rec(ring, rows, &rest, trunc);
        let term = ts_mul(ring, e, &sub, trunc);
        for (i, c) in term.into_iter().enumerate() {
            acc[i] = if k % 2 == 0 {
                ring.add(&acc[i], &c)
            } else {
                ring.sub(&acc[i], &c)
            };
        }
    }
    acc
}

fn series_inverse(ring: &CoeffRing, f: &TruncSeries, trunc: usize) -> TruncSeries {
    assert_eq!(f[0], ring.one(), "series inversion needs constant term 1");
    let mut b = vec![ring.zero(); trunc];
    b[0] = ring.one();
    for m in 1..trunc {
        let mut acc = ring.zero();
        for k in 1..=m {
            if k < f.len() && !ring.is_zero(&f[k]) {
                acc = ring.add(&acc, &ring.mul(&f[k], &b[m - k]));
            }
        }
        b[m] = ring.neg(&acc);
    }
    b
}

/// Minimal algebra generators through degree D: for each d, invariants
/// whose classes generate (R_d)^G modulo products of lower-degree
/// invariants. Deterministic given the monomial order.
pub fn algebra_generators(
    ring: &CoeffRing,
    group: &FiniteMatrixGroup,
    max_degree: u32,
) -> Result<Vec<(u32, MultiPoly)>> {
    let data = compute_invariants(ring, group, max_degree)?;
    algebra_generators_from_data(ring, &data)
}

pub fn algebra_generators_from_data(
    ring: &CoeffRing,
    data: &GradedInvariantData,
) -> Result<Vec<(u32, MultiPoly)>> {
    let mut out: Vec<(u32, MultiPoly)> = Vec::new();
    for d in 1..=data.max_degree {
        // Decomposables: products of positive-degree invariants.
        let mut products: Vec<MultiPoly> = Vec::new();
        for a in 1..d {
            let b = d - a;
            if a > b {
                break;
            }
            for u in data.basis_polys(a) {
                for v in data.basis_polys(b) {
                    products.push(u.mul(ring, &v));
                }
            }
        }
        let new_gens = complement_in_degree(ring, data, d, &products)?;
        for g in new_gens {
            out.push((d, g));
        }
    }
    Ok(out)
}

/// O-basis vectors of S_d not in the O-span of `spanned` (given as
/// polynomials of degree d), in canonical order.
fn complement_in_degree(
    ring: &CoeffRing,
    data: &GradedInvariantData,
    d: u32,
    spanned: &[MultiPoly],
) -> Result<Vec<MultiPoly>> {
    let rank = data.rank(d);
    if rank == 0 {
        return Ok(Vec::new());
    }
    let block = model_block(ring);
    let poly_model = ring_matrix::is_poly_model(ring);

    // Coordinates of a degree-d invariant in the S_d basis.
    let sbasis_cols_ring: Vec<Vec<RingElement>> = data.degrees[d as usize].basis.clone();
    let nmon = data.degrees[d as usize].monomial_rank;

    if poly_model {
        use crate::coeff_rings::FpPoly;
        let prime = ring_matrix::poly_model_prime(ring);
        let bmat = Matrix::<FpPoly>::from_cols(
            nmon,
            sbasis_cols_ring
                .iter()
                .map(|v| ring_matrix::vec_to_poly_model(ring, v).0)
                .collect(),
        );
        let bsolver = LatticeSolver::new(&bmat);
        let in_sbasis = |p: &MultiPoly| -> Vec<FpPoly> {
            let coords = p.coeff_vector(ring, d);
            let (mv, _) = ring_matrix::vec_to_poly_model(ring, &coords);
            match &prime {
                None => bsolver.solve(&mv).expect("invariant lies in the lattice"),
                Some(pr) => bsolver.solve_local(&mv, pr).expect("invariant lies in the lattice").0,
            }
        };
        let span_cols: Vec<Vec<FpPoly>> = spanned.iter().map(|p| in_sbasis(p)).collect();
        let mut picked: Vec<MultiPoly> = Vec::new();
        let mut current = span_cols;
        for i in 0..rank {
            let mut unit = vec![FpPoly::zero_p(ring.param().unwrap()); rank];
            unit[i] = FpPoly::constant(ring.param().unwrap(), 1);
            let member = if current.is_empty() {
                false
            } else {
                let solver = LatticeSolver::new(&Matrix::from_cols(rank, current.clone()));
                match &prime {
                    None => solver.solve(&unit).is_some(),
                    Some(pr) => solver.solve_local(&unit, pr).is_some(),
                }
            };
            if !member {
                picked.push(data.basis_poly(d, i));
                current.push(unit);
            }
        }
        return Ok(picked);
    }

    let prime = ring_matrix::int_model_prime(ring);
    let bmat = Matrix::<BigInt>::from_cols(
        nmon * block,
        sbasis_cols_ring
            .iter()
            .map(|v| ring_matrix::vec_to_int_model(ring, v).0)
            .collect(),
    );
    let bsolver = LatticeSolver::new(&bmat);
    let in_sbasis = |p: &MultiPoly| -> Vec<BigInt> {
        let coords = p.coeff_vector(ring, d);
        let (mv, _) = ring_matrix::vec_to_int_model(ring, &coords);
        match &prime {
            None => bsolver.solve(&mv).expect("invariant lies in the lattice"),
            Some(pr) => {
                bsolver
                    .solve_local(&mv, pr)
                    .expect("invariant lies in the lattice")
                    .0
            }
        }
    };

    // O-span columns: each product contributes its ζ-orbit.
    let mut current: Vec<Vec<BigInt>> = Vec::new();
    for pcol in spanned.iter().map(|p| in_sbasis(p)) {
        push_zeta_orbit(ring, &mut current, pcol);
    }
    let dim = rank * block;
    let mut picked: Vec<MultiPoly> = Vec::new();
    for i in 0..rank {
        let mut unit = vec![BigInt::zero(); dim];
        unit[i * block] = BigInt::one();
        let member = if current.is_empty() {
            false
        } else {
            let solver = LatticeSolver::new(&Matrix::from_cols(dim, current.clone()));
            match &prime {
                None => solver.solve(&unit).is_some(),
                Some(pr) => solver.solve_local(&unit, pr).is_some(),
            }
        };
        if !member {
            picked.push(data.basis_poly(d, i));
            push_zeta_orbit(ring, &mut current, unit);
        }
    }
    Ok(picked)
}

pub(crate) fn push_zeta_orbit(ring: &CoeffRing, cols: &mut Vec<Vec<BigInt>>, v: Vec<BigInt>) {
    let block = model_block(ring);
    if block == 1 {
        cols.push(v);
        return;
    }
    let p = ring.param().expect("cyclotomic");
    let mut w = v;
    for _ in 0..block {
        cols.push(w.clone());
        w = zeta_shift_model(&w, p);
    }
}

/// Fixed linear form for a p-group over an equicharacteristic local ring
/// F_p[t]_(t); existence is guaranteed, so failure to find one under
/// valid preconditions is an internal error.
pub fn invariant_linear_form(ring: &CoeffRing, group: &FiniteMatrixGroup) -> Result<MultiPoly> {
    let p = match ring.kind {
        RingKind::PolyFp { p } if ring.is_localized() => p,
        _ => {
            return Err(Error::PreconditionFailed(
                "invariant linear form needs F_p[t] localized at (t)".into(),
            ))
        }
    };
    if !group.is_p_group(p) && group.order != 1 {
        return Err(Error::PreconditionFailed(format!(
            "group of order {} is not a {p}-group",
            group.order
        )));
    }
    let basis = invariant_basis_vectors(ring, group, 1)?;
    let v = basis.into_iter().next().ok_or_else(|| {
        Error::PreconditionFailed("no invariant linear form found; hypotheses violated".into())
    })?;
    // The saturated kernel basis has unit content, so v is not in πR.
    assert!(
        v.iter()
            .any(|c| ring.valuation(c).map_or(false, |val| val == 0)),
        "linear form must be primitive (not divisible by the uniformizer)"
    );
    // Normalize the leading coefficient to 1 when it is a constant.
    let lead = v.iter().find(|c| !ring.is_zero(c)).unwrap().clone();
    let v = if ring.is_unit(&lead) {
        let inv = ring.inv_unit(&lead)?;
        v.iter().map(|c| ring.mul(c, &inv)).collect()
    } else {
        v
    };
    Ok(MultiPoly::from_coeff_vector(ring, group.n, 1, &v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_action::generate_closure;

    fn zmat(vals: &[&[i64]]) -> RingMatrix {
        let r = CoeffRing::integers();
        RingMatrix::from_rows(
            vals.iter()
                .map(|row| row.iter().map(|&x| r.from_i64(x)).collect())
                .collect(),
        )
    }

    fn minus_i(r: &CoeffRing) -> FiniteMatrixGroup {
        let m = RingMatrix::from_rows(vec![
            vec![r.from_i64(-1), r.zero()],
            vec![r.zero(), r.from_i64(-1)],
        ]);
        generate_closure(r, vec![m], 10).unwrap()
    }

    #[test]
    fn invariants_of_minus_identity() {
        let r = CoeffRing::integers();
        let g = minus_i(&r);
        // Even degree: everything. Odd: nothing.
        let inv2 = invariants_in_degree(&r, &g, 2).unwrap();
        assert_eq!(inv2.len(), 3);
        let displays: Vec<String> = inv2.iter().map(|p| p.display(&r)).collect();
        assert_eq!(displays, vec!["X^2", "X*Y", "Y^2"]);
        assert!(invariants_in_degree(&r, &g, 3).unwrap().is_empty());
    }

    #[test]
    fn invariants_cyclotomic_diag() {
        // <diag(zeta_3, zeta_3^{-1})>: degree 2 invariants are spanned by XY.
        let r = CoeffRing::cyclotomic(3).unwrap();
        let m = RingMatrix::from_rows(vec![
            vec![r.zeta(), r.zero()],
            vec![r.zero(), r.pow(&r.zeta(), 2)],
        ]);
        let g = generate_closure(&r, vec![m], 10).unwrap();
        assert_eq!(g.order, 3);
        let inv2 = invariants_in_degree(&r, &g, 2).unwrap();
        assert_eq!(inv2.len(), 1);
        assert_eq!(inv2[0].display(&r), "X*Y");
    }

    #[test]
    fn hilbert_examples() {
        let r = CoeffRing::integers();
        let g = minus_i(&r);
        let h = hilbert_function(&r, &g, 4).unwrap();
        assert_eq!(h.coefficients, vec![1, 0, 3, 0, 5]);

        // Trivial group: the full polynomial ring.
        let t = generate_closure(&r, vec![RingMatrix::identity(&r, 2)], 10).unwrap();
        let h = hilbert_function(&r, &t, 3).unwrap();
        assert_eq!(h.coefficients, vec![1, 2, 3, 4]);

        // Order-3 rotation: Molien gives [1, 0, 1, 2].
        let g3 = generate_closure(&r, vec![zmat(&[&[0, -1], &[1, -1]])], 10).unwrap();
        let h = hilbert_function(&r, &g3, 3).unwrap();
        assert_eq!(h.coefficients, vec![1, 0, 1, 2]);
    }

    #[test]
    fn molien_matches_hilbert() {
        let r = CoeffRing::integers();
        for gens in [
            vec![zmat(&[&[-1, 0], &[0, -1]])],
            vec![zmat(&[&[0, -1], &[1, -1]])],
            vec![zmat(&[&[0, -1], &[1, 0]])],
            vec![zmat(&[&[1, 0], &[0, -1]])],
        ] {
            let g = generate_closure(&r, gens, 20).unwrap();
            let mol = molien_series(&r, &g, 8).unwrap();
            let hil = hilbert_function(&r, &g, 8).unwrap();
            let hil_int: Vec<BigInt> = hil.coefficients.iter().map(|&c| BigInt::from(c)).collect();
            assert_eq!(mol, hil_int, "Molien = Hilbert for |G| = {}", g.order);
        }
        // Expand (1+t^2)/(1-t^2)^2 by hand: 1, 0, 3, 0, 5.
        let g = minus_i(&r);
        assert_eq!(
            molien_series(&r, &g, 4).unwrap(),
            vec![1, 0, 3, 0, 5].into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
        // Positive characteristic is rejected.
        let rp = CoeffRing::poly_fp(3).unwrap();
        let gp = generate_closure(&rp, vec![RingMatrix::identity(&rp, 2)], 10).unwrap();
        assert!(matches!(
            molien_series(&rp, &gp, 3),
            Err(Error::CharacteristicPositive)
        ));
    }

    #[test]
    fn transfer_examples() {
        // G = <swap>, H trivial, over Z localized at 3: transfer(X) = (X+Y)/2.
        let r = CoeffRing::integers_localized(3).unwrap();
        let swap = RingMatrix::from_rows(vec![
            vec![r.zero(), r.one()],
            vec![r.one(), r.zero()],
        ]);
        let g = generate_closure(&r, vec![swap], 10).unwrap();
        let h = generate_closure(&r, vec![RingMatrix::identity(&r, 2)], 10).unwrap();
        let x = MultiPoly::variable(&r, 2, 0);
        let tr = transfer(&r, &x, &g, &h).unwrap();
        let half = r.exact_div(&r.one(), &r.from_i64(2)).unwrap();
        let y = MultiPoly::variable(&r, 2, 1);
        let expected = x.add(&r, &y).scalar_mul(&r, &half);
        assert_eq!(tr, expected);

        // Transfer is the identity on R^G.
        let xy = x.mul(&r, &y);
        assert_eq!(transfer(&r, &xy, &g, &h).unwrap(), xy);

        // Over Z localized at 2 the index 2 is not invertible.
        let r2 = CoeffRing::integers_localized(2).unwrap();
        let swap2 = RingMatrix::from_rows(vec![
            vec![r2.zero(), r2.one()],
            vec![r2.one(), r2.zero()],
        ]);
        let g2 = generate_closure(&r2, vec![swap2], 10).unwrap();
        let h2 = generate_closure(&r2, vec![RingMatrix::identity(&r2, 2)], 10).unwrap();
        let x2 = MultiPoly::variable(&r2, 2, 0);
        assert!(matches!(
            transfer(&r2, &x2, &g2, &h2),
            Err(Error::IndexNotInvertible(2))
        ));
    }

    #[test]
    fn algebra_generator_examples() {
        let r = CoeffRing::integers();
        let g = minus_i(&r);
        let gens = algebra_generators(&r, &g, 2).unwrap();
        let shown: Vec<(u32, String)> = gens.iter().map(|(d, p)| (*d, p.display(&r))).collect();
        assert_eq!(
            shown,
            vec![
                (2, "X^2".to_string()),
                (2, "X*Y".to_string()),
                (2, "Y^2".to_string())
            ]
        );

        // Third Veronese: <diag(zeta_3, zeta_3)> over Z[zeta_3].
        let rc = CoeffRing::cyclotomic(3).unwrap();
        let m = RingMatrix::from_rows(vec![
            vec![rc.zeta(), rc.zero()],
            vec![rc.zero(), rc.zeta()],
        ]);
        let gv = generate_closure(&rc, vec![m], 10).unwrap();
        let gens = algebra_generators(&rc, &gv, 3).unwrap();
        let shown: Vec<(u32, String)> = gens.iter().map(|(d, p)| (*d, p.display(&rc))).collect();
        assert_eq!(
            shown,
            vec![
                (3, "X^3".to_string()),
                (3, "X^2*Y".to_string()),
                (3, "X*Y^2".to_string()),
                (3, "Y^3".to_string())
            ]
        );

        // Trivial group: X and Y.
        let t = generate_closure(&r, vec![RingMatrix::identity(&r, 2)], 10).unwrap();
        let gens = algebra_generators(&r, &t, 1).unwrap();
        let shown: Vec<(u32, String)> = gens.iter().map(|(d, p)| (*d, p.display(&r))).collect();
        assert_eq!(shown, vec![(1, "X".to_string()), (1, "Y".to_string())]);
    }

    #[test]
    fn invariant_linear_form_examples() {
        let r = CoeffRing::poly_fp_localized(3).unwrap();
        let u = RingMatrix::from_rows(vec![
            vec![r.one(), r.one()],
            vec![r.zero(), r.one()],
        ]);
        let g = generate_closure(&r, vec![u], 10).unwrap();
        assert_eq!(g.order, 3);
        let v = invariant_linear_form(&r, &g).unwrap();
        assert_eq!(v.display(&r), "X");

        // Trivial group: X by the tie-break.
        let t = generate_closure(&r, vec![RingMatrix::identity(&r, 2)], 10).unwrap();
        assert_eq!(invariant_linear_form(&r, &t).unwrap().display(&r), "X");

        // Not a p-group: rejected.
        let m = RingMatrix::from_rows(vec![
            vec![r.from_i64(-1), r.zero()],
            vec![r.zero(), r.from_i64(-1)],
        ]);
        let g2 = generate_closure(&r, vec![m], 10).unwrap();
        assert_eq!(g2.order, 2);
        assert!(invariant_linear_form(&r, &g2).is_err());
    }

    #[test]
    fn hilbert_is_conjugation_invariant() {
        let r = CoeffRing::integers();
        let g = generate_closure(&r, vec![zmat(&[&[0, -1], &[1, 0]])], 10).unwrap();
        let b = zmat(&[&[1, 1], &[0, 1]]);
        let binv = b.inverse(&r).unwrap();
        let conj = b.mul(&r, &g.generators[0].mat).mul(&r, &binv);
        let gc = generate_closure(&r, vec![conj], 10).unwrap();
        let h1 = hilbert_function(&r, &g, 8).unwrap();
        let h2 = hilbert_function(&r, &gc, 8).unwrap();
        assert_eq!(h1.coefficients, h2.coefficients);
    }

    #[test]
    fn localized_cyclotomic_invariants() {
        // Same Veronese group over the localized ring: ranks match the
        // unlocalized computation.
        let rl = CoeffRing::cyclotomic_localized(3).unwrap();
        let m = RingMatrix::from_rows(vec![
            vec![rl.zeta(), rl.zero()],
            vec![rl.zero(), rl.zeta()],
        ]);
        let g = generate_closure(&rl, vec![m], 10).unwrap();
        let h = hilbert_function(&rl, &g, 6).unwrap();
        assert_eq!(h.coefficients, vec![1, 0, 0, 4, 0, 0, 7]);
    }
}
