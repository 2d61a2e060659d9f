//! Exact normal forms and kernel/cokernel computations over a PID.
//!
//! Everything else in the crate reduces to the routines in this module.
//! The algorithms are the classical ones: row-style Hermite form with a
//! smallest-pivot heuristic, Smith form by alternating row/column
//! elimination, kernels read off the right transform of the Smith form.
//! Entries are arbitrary precision; intermediate swell is accepted at
//! desk scale. Empty matrices (0 rows and/or 0 columns) are legal
//! everywhere since graded pieces vanish routinely.
//!
//! The scalar type is abstract so the same engine serves ℤ (via
//! `num_bigint::BigInt`) and F_p[t] (via [`crate::coeff_rings::FpPoly`]).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Scalar ring admitting exact Euclidean division, enough for Hermite and
/// Smith normal forms. Implemented by `BigInt` and `FpPoly`.
pub trait ExactScalar: Clone + Eq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Division with remainder; when the divisor is a canonical associate
    /// (positive / monic) the remainder lies in the canonical residue set.
    fn div_rem_floor(&self, divisor: &Self) -> (Self, Self);
    /// Strict Euclidean-size comparison used for pivot selection.
    fn size_lt(&self, other: &Self) -> bool;
    fn is_unit(&self) -> bool;
    /// `(c, u)` with `c = self * u`, `u` a unit and `c` the canonical
    /// associate (nonnegative for integers, monic for polynomials).
    fn canonical_associate(&self) -> (Self, Self);
    /// Exact division; `None` if the divisor does not divide.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

impl ExactScalar for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        <BigInt as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_rem_floor(&self, divisor: &Self) -> (Self, Self) {
        self.div_mod_floor(divisor)
    }
    fn size_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn canonical_associate(&self) -> (Self, Self) {
        if self.is_negative() {
            (-self, -<BigInt as One>::one())
        } else {
            (self.clone(), <BigInt as One>::one())
        }
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if Zero::is_zero(divisor) {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
}

/// Dense matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: ExactScalar> std::fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                write!(f, "{:?}, ", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: ExactScalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        Matrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: Vec<Vec<T>>) -> Self {
        let c = cols.len();
        let mut m = Self::zero(rows, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut m = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).add(&a.mul(b));
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    acc = acc.add(&self.get(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    /// Stack `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Place `self` left of `other` (same row count).
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch");
        let mut m = Self::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] -= q * row[b]
    fn row_sub(&mut self, a: usize, b: usize, q: &T) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(a, j).sub(&q.mul(self.get(b, j)));
            self.set(a, j, v);
        }
    }

    /// col[a] -= q * col[b]
    fn col_sub(&mut self, a: usize, b: usize, q: &T) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, a).sub(&q.mul(self.get(i, b)));
            self.set(i, a, v);
        }
    }

    fn scale_row(&mut self, i: usize, u: &T) {
        for j in 0..self.cols {
            let v = self.get(i, j).mul(u);
            self.set(i, j, v);
        }
    }

    fn scale_col(&mut self, j: usize, u: &T) {
        for i in 0..self.rows {
            let v = self.get(i, j).mul(u);
            self.set(i, j, v);
        }
    }
}

/// Integer matrix: the concrete instantiation used throughout the crate.
pub type IntMatrix = Matrix<BigInt>;

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }
}

/// Result of the row-style Hermite reduction `U * A = H`.
#[derive(Clone, Debug)]
pub struct HermiteForm<T: ExactScalar> {
    pub h: Matrix<T>,
    pub u: Matrix<T>,
    /// Columns containing a pivot, in order.
    pub pivot_cols: Vec<usize>,
}

impl<T: ExactScalar> HermiteForm<T> {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

/// Row-style Hermite normal form: `U` unimodular with `U * A = H`, `H` in
/// row-echelon form with canonical (positive/monic) pivots and the entries
/// above each pivot reduced into the canonical residue set.
pub fn hermite_normal_form<T: ExactScalar>(a: &Matrix<T>) -> HermiteForm<T> {
    let mut h = a.clone();
    let mut u = Matrix::identity(a.rows());
    let mut pivot_cols = Vec::new();
    let mut pr = 0usize;

    for c in 0..h.cols() {
        if pr >= h.rows() {
            break;
        }
        // Repeatedly pick the smallest nonzero entry of column c below pr
        // as pivot and reduce until the column is clear below the pivot.
        let mut have_pivot = false;
        loop {
            let mut best: Option<usize> = None;
            for r in pr..h.rows() {
                if h.get(r, c).is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(r),
                    Some(b) if h.get(r, c).size_lt(h.get(b, c)) => Some(r),
                    keep => keep,
                };
            }
            let Some(rp) = best else { break };
            have_pivot = true;
            h.swap_rows(pr, rp);
            u.swap_rows(pr, rp);
            let mut clean = true;
            for r in pr + 1..h.rows() {
                if h.get(r, c).is_zero() {
                    continue;
                }
                let (q, _) = h.get(r, c).div_rem_floor(h.get(pr, c));
                h.row_sub(r, pr, &q);
                u.row_sub(r, pr, &q);
                if !h.get(r, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if have_pivot {
            let (_, unit) = h.get(pr, c).canonical_associate();
            if !unit.is_zero() && unit != T::one() {
                h.scale_row(pr, &unit);
                u.scale_row(pr, &unit);
            }
            for r in 0..pr {
                let (q, _) = h.get(r, c).div_rem_floor(h.get(pr, c));
                h.row_sub(r, pr, &q);
                u.row_sub(r, pr, &q);
            }
            pivot_cols.push(c);
            pr += 1;
        }
    }
    HermiteForm { h, u, pivot_cols }
}

/// Smith decomposition `U * A * V = D` with `D` diagonal, canonical
/// diagonal entries forming a divisibility chain, `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<T: ExactScalar> {
    pub d: Matrix<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
    pub rank: usize,
}

impl<T: ExactScalar> SmithDecomposition<T> {
    /// Nonzero diagonal entries d_1 | d_2 | ... (units included).
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

pub fn smith_normal_form<T: ExactScalar>(a: &Matrix<T>) -> SmithDecomposition<T> {
    let mut d = a.clone();
    let mut u = Matrix::identity(a.rows());
    let mut v = Matrix::identity(a.cols());
    let n = a.rows().min(a.cols());
    let mut k = 0usize;

    while k < n {
        // Global smallest nonzero pivot in the trailing submatrix.
        let mut best: Option<(usize, usize)> = None;
        for i in k..d.rows() {
            for j in k..d.cols() {
                if d.get(i, j).is_zero() {
                    continue;
                }
                best = match best {
                    None => Some((i, j)),
                    Some((bi, bj)) if d.get(i, j).size_lt(d.get(bi, bj)) => Some((i, j)),
                    keep => keep,
                };
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        loop {
            // Clear column k below the pivot.
            let mut dirty = false;
            for r in k + 1..d.rows() {
                if d.get(r, k).is_zero() {
                    continue;
                }
                let (q, _) = d.get(r, k).div_rem_floor(d.get(k, k));
                d.row_sub(r, k, &q);
                u.row_sub(r, k, &q);
                if !d.get(r, k).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder smaller than the pivot appeared; promote it.
                let mut best = k;
                for r in k + 1..d.rows() {
                    if !d.get(r, k).is_zero() && d.get(r, k).size_lt(d.get(best, k)) {
                        best = r;
                    }
                }
                d.swap_rows(k, best);
                u.swap_rows(k, best);
                continue;
            }
            // Clear row k right of the pivot.
            for c in k + 1..d.cols() {
                if d.get(k, c).is_zero() {
                    continue;
                }
                let (q, _) = d.get(k, c).div_rem_floor(d.get(k, k));
                d.col_sub(c, k, &q);
                v.col_sub(c, k, &q);
                if !d.get(k, c).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let mut best = k;
                for c in k + 1..d.cols() {
                    if !d.get(k, c).is_zero() && d.get(k, c).size_lt(d.get(k, best)) {
                        best = c;
                    }
                }
                d.swap_cols(k, best);
                v.swap_cols(k, best);
                continue;
            }
            // Pivot divides everything in its row/column; enforce the
            // divisibility chain against the trailing block.
            let mut fixed = true;
            'scan: for i in k + 1..d.rows() {
                for j in k + 1..d.cols() {
                    if d.get(i, j).exact_div(d.get(k, k)).is_none() {
                        // Fold row i into row k and restart elimination.
                        let one = T::one();
                        for c in 0..d.cols() {
                            let val = d.get(k, c).add(d.get(i, c));
                            d.set(k, c, val);
                        }
                        for c in 0..u.cols() {
                            let val = u.get(k, c).add(u.get(i, c));
                            u.set(k, c, val);
                        }
                        let _ = one;
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        let (_, unit) = d.get(k, k).canonical_associate();
        if unit != T::one() {
            d.scale_row(k, &unit);
            u.scale_row(k, &unit);
        }
        k += 1;
    }
    SmithDecomposition { d, u, v, rank: k }
}

pub fn rank<T: ExactScalar>(a: &Matrix<T>) -> usize {
    hermite_normal_form(a).rank()
}

/// Basis of the full (saturated) kernel lattice `{v : A v = 0}`.
///
/// The kernel of a matrix over a PID is automatically a pure submodule, so
/// the columns of the right Smith transform past the rank form a basis.
pub fn kernel_basis<T: ExactScalar>(a: &Matrix<T>) -> Vec<Vec<T>> {
    if a.cols() == 0 {
        return Vec::new();
    }
    if a.rows() == 0 {
        return (0..a.cols())
            .map(|j| {
                let mut v = vec![T::zero(); a.cols()];
                v[j] = T::one();
                v
            })
            .collect();
    }
    let snf = smith_normal_form(a);
    (snf.rank..a.cols()).map(|j| snf.v.col(j)).collect()
}

/// Invariant factors of (ambient free module of rank `ambient_rank`) / (column
/// span of `a`). Non-unit torsion factors are listed; free rank separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelFactors<T> {
    pub torsion: Vec<T>,
    pub free_rank: usize,
}

pub fn cokernel_invariant_factors<T: ExactScalar>(
    a: &Matrix<T>,
    ambient_rank: usize,
) -> CokernelFactors<T> {
    assert_eq!(
        a.rows(),
        ambient_rank,
        "column space must live in the ambient lattice"
    );
    if a.cols() == 0 {
        return CokernelFactors {
            torsion: Vec::new(),
            free_rank: ambient_rank,
        };
    }
    let snf = smith_normal_form(a);
    let torsion = snf
        .invariant_factors()
        .into_iter()
        .filter(|f| !f.is_unit())
        .collect();
    CokernelFactors {
        torsion,
        free_rank: ambient_rank - snf.rank,
    }
}

/// Cached Smith data for solving `A x = b` repeatedly against one matrix.
pub struct LatticeSolver<T: ExactScalar> {
    snf: SmithDecomposition<T>,
    rows: usize,
    cols: usize,
}

impl<T: ExactScalar> LatticeSolver<T> {
    pub fn new(a: &Matrix<T>) -> Self {
        LatticeSolver {
            snf: smith_normal_form(a),
            rows: a.rows(),
            cols: a.cols(),
        }
    }

    pub fn rank(&self) -> usize {
        self.snf.rank
    }

    /// Exact solution of `A x = b` over the scalar ring, if one exists.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let ub = self.snf.u.mul_vec(b);
        let mut y = vec![T::zero(); self.cols];
        for (i, ubi) in ub.iter().enumerate() {
            if i < self.snf.rank {
                y[i] = ubi.exact_div(self.snf.d.get(i, i))?;
            } else if !ubi.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&y))
    }

    /// Solution of `A x = c b` where `c` is coprime to `prime`; this is
    /// membership of `b` in the column span over the localization at
    /// `prime`. Returns `(x, c)`.
    pub fn solve_local(&self, b: &[T], prime: &T) -> Option<(Vec<T>, T)> {
        assert_eq!(b.len(), self.rows);
        let ub = self.snf.u.mul_vec(b);
        // Denominator needed in each coordinate is d_i with the prime part
        // of the quotient cleared; collect the prime-free cofactors.
        let mut denom = T::one();
        for (i, ubi) in ub.iter().enumerate() {
            if i < self.snf.rank {
                let d = self.snf.d.get(i, i);
                // Require v_prime(ubi) >= v_prime(d).
                let mut dd = d.clone();
                let mut uu = ubi.clone();
                loop {
                    match dd.exact_div(prime) {
                        Some(d2) => match uu.exact_div(prime) {
                            Some(u2) => {
                                dd = d2;
                                uu = u2;
                            }
                            None => {
                                if uu.is_zero() {
                                    break;
                                }
                                return None;
                            }
                        },
                        None => break,
                    }
                }
                // dd is now prime-free; it contributes to the denominator.
                denom = lcm_scalar(&denom, &dd);
            } else if !ubi.is_zero() {
                return None;
            }
        }
        let mut y = vec![T::zero(); self.cols];
        for (i, ubi) in ub.iter().enumerate() {
            if i < self.snf.rank {
                y[i] = ubi
                    .mul(&denom)
                    .exact_div(self.snf.d.get(i, i))
                    .expect("denominator was chosen to make this exact");
            }
        }
        Some((self.snf.v.mul_vec(&y), denom))
    }
}

fn gcd_scalar<T: ExactScalar>(a: &T, b: &T) -> T {
    let mut x = a.canonical_associate().0;
    let mut y = b.canonical_associate().0;
    while !y.is_zero() {
        let (_, r) = x.div_rem_floor(&y);
        x = y;
        y = r;
    }
    x
}

fn lcm_scalar<T: ExactScalar>(a: &T, b: &T) -> T {
    if a.is_zero() || b.is_zero() {
        return T::zero();
    }
    let g = gcd_scalar(a, b);
    a.mul(b)
        .exact_div(&g)
        .expect("gcd divides product")
        .canonical_associate()
        .0
}

/// Determinant by fraction-free (Bareiss) elimination; exact over any
/// integral domain scalar.
pub fn determinant<T: ExactScalar>(a: &Matrix<T>) -> T {
    assert_eq!(a.rows(), a.cols(), "determinant of a square matrix");
    let n = a.rows();
    if n == 0 {
        return T::one();
    }
    let mut m = a.clone();
    let mut prev = T::one();
    let mut sign_flip = false;
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                return T::zero();
            };
            m.swap_rows(k, r);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m
                    .get(k, k)
                    .mul(m.get(i, j))
                    .sub(&m.get(i, k).mul(m.get(k, j)));
                let val = num.exact_div(&prev).expect("Bareiss division is exact");
                m.set(i, j, val);
            }
            m.set(i, k, T::zero());
        }
        prev = m.get(k, k).clone();
    }
    let det = m.get(n - 1, n - 1).clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

pub fn is_unimodular<T: ExactScalar>(a: &Matrix<T>) -> bool {
    a.rows() == a.cols() && determinant(a).is_unit()
}

// ---------------------------------------------------------------------------
// Spec-level convenience API over the integers.
// ---------------------------------------------------------------------------

/// `U * A = H` over ℤ. See [`hermite_normal_form`].
pub fn hnf_int(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let f = hermite_normal_form(a);
    (f.h, f.u)
}

/// Full Smith decomposition over ℤ.
pub fn snf_int(a: &IntMatrix) -> SmithDecomposition<BigInt> {
    smith_normal_form(a)
}

/// Basis of `{v : A v = 0}` over ℤ (saturated lattice).
pub fn integer_kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    kernel_basis(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn check_hnf_contract(a: &IntMatrix) {
        let f = hermite_normal_form(a);
        assert!(is_unimodular(&f.u), "U must be unimodular");
        assert_eq!(f.u.mul(a), f.h, "U*A = H");
        // Echelon shape with positive pivots, entries above reduced.
        for (r, &c) in f.pivot_cols.iter().enumerate() {
            let p = f.h.get(r, c);
            assert!(*p > bi(0), "pivot positive");
            for rr in r + 1..f.h.rows() {
                assert!(ExactScalar::is_zero(f.h.get(rr, c)), "zeros below pivot");
            }
            for rr in 0..r {
                let e = f.h.get(rr, c);
                assert!(*e >= bi(0) && e < p, "entries above pivot reduced");
            }
        }
    }

    #[test]
    fn hnf_already_in_form() {
        let a = mat(&[&[2, 0], &[0, 3]]);
        let f = hermite_normal_form(&a);
        assert_eq!(f.h, a);
        assert_eq!(f.u, IntMatrix::identity(2));
        check_hnf_contract(&a);
    }

    #[test]
    fn hnf_zero_matrix() {
        let a = mat(&[&[0, 0], &[0, 0]]);
        let f = hermite_normal_form(&a);
        assert!(f.h.is_zero());
        assert_eq!(f.u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_row_reduction() {
        // Row-reducing by hand: r2 -= 3 r1 gives [[2,4],[0,-4]]; normalizing
        // the pivot and reducing the entry above it into [0, 4) yields
        // [[2,0],[0,4]]. Verify the full contract rather than one echelon
        // representative.
        let a = mat(&[&[2, 4], &[6, 8]]);
        let f = hermite_normal_form(&a);
        assert_eq!(f.h, mat(&[&[2, 0], &[0, 4]]));
        check_hnf_contract(&a);
    }

    #[test]
    fn hnf_rectangular_and_empty() {
        check_hnf_contract(&mat(&[&[3, 1, 4], &[1, 5, 9]]));
        check_hnf_contract(&mat(&[&[2], &[4], &[6]]));
        let empty = IntMatrix::zero(0, 3);
        let f = hermite_normal_form(&empty);
        assert_eq!(f.h.rows(), 0);
        assert_eq!(f.rank(), 0);
        let empty2 = IntMatrix::zero(3, 0);
        let f2 = hermite_normal_form(&empty2);
        assert_eq!(f2.rank(), 0);
        assert_eq!(f2.u, IntMatrix::identity(3));
    }

    fn check_snf_contract(a: &IntMatrix) {
        let s = smith_normal_form(a);
        assert!(is_unimodular(&s.u));
        assert!(is_unimodular(&s.v));
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "U*A*V = D");
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(ExactScalar::is_zero(s.d.get(i, j)), "D diagonal");
                }
            }
        }
        let facs = s.invariant_factors();
        for w in facs.windows(2) {
            assert!(
                w[1].exact_div(&w[0]).is_some(),
                "divisibility chain {:?}",
                facs
            );
        }
        for f in &facs {
            assert!(*f > bi(0));
        }
    }

    #[test]
    fn snf_diag_2_3() {
        // Oracle: d1 = gcd of all entries = 1, d1*d2 = |det| = 6.
        let a = mat(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors(), vec![bi(1), bi(6)]);
        check_snf_contract(&a);
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(3);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors(), vec![bi(1), bi(1), bi(1)]);
    }

    #[test]
    fn snf_2_4_6_8() {
        // Oracle: d1 = gcd of entries = 2, d1*d2 = |det| = 8 so d2 = 4.
        let a = mat(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors(), vec![bi(2), bi(4)]);
        check_snf_contract(&a);
    }

    #[test]
    fn kernel_examples() {
        // Solve directly: x + y = 0 has basis (1,-1) up to sign.
        let k = integer_kernel_basis(&mat(&[&[1, 1], &[1, 1]]));
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(v == &[bi(1), bi(-1)] || v == &[bi(-1), bi(1)]);

        assert!(integer_kernel_basis(&IntMatrix::identity(2)).is_empty());

        let k = integer_kernel_basis(&mat(&[&[0, 0], &[0, 0]]));
        assert_eq!(k.len(), 2);
        // Basis of the full lattice: determinant of the basis matrix is a unit.
        let b = IntMatrix::from_cols(2, k);
        assert!(is_unimodular(&b));
    }

    #[test]
    fn cokernel_examples() {
        // Z/2 + Z/3 = Z/6.
        let c = cokernel_invariant_factors(&mat(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(c.torsion, vec![bi(6)]);
        assert_eq!(c.free_rank, 0);

        let mut two_i4 = IntMatrix::zero(4, 4);
        for i in 0..4 {
            two_i4.set(i, i, bi(2));
        }
        let c = cokernel_invariant_factors(&two_i4, 4);
        assert_eq!(c.torsion, vec![bi(2); 4]);
        assert_eq!(c.free_rank, 0);

        let c = cokernel_invariant_factors(&IntMatrix::zero(2, 0), 2);
        assert!(c.torsion.is_empty());
        assert_eq!(c.free_rank, 2);
    }

    #[test]
    fn solver_exact_and_local() {
        let a = mat(&[&[2, 0], &[0, 3]]);
        let s = LatticeSolver::new(&a);
        assert_eq!(s.solve(&[bi(4), bi(9)]), Some(vec![bi(2), bi(3)]));
        assert_eq!(s.solve(&[bi(1), bi(0)]), None);
        // 1/2 is allowed when localizing at 3.
        let (x, c) = s.solve_local(&[bi(1), bi(0)], &bi(3)).unwrap();
        assert_eq!(a.mul_vec(&x), vec![c.clone(), bi(0)]);
        assert!(c.gcd(&bi(3)).is_one());
        // ...but 1/3 is not.
        assert!(s.solve_local(&[bi(0), bi(1)], &bi(3)).is_none());
    }

    #[test]
    fn determinant_bareiss() {
        assert_eq!(determinant(&mat(&[&[2, 4], &[6, 8]])), bi(-8));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])), bi(0));
        assert_eq!(
            determinant(&mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])),
            bi(-3)
        );
        assert_eq!(determinant(&IntMatrix::zero(0, 0)), bi(1));
    }

    proptest::proptest! {
        #[test]
        fn prop_snf_contract(rows in 1usize..5, cols in 1usize..5,
                             seed in proptest::collection::vec(-9i64..10, 16)) {
            let data: Vec<BigInt> = (0..rows*cols).map(|i| bi(seed[i % seed.len()])).collect();
            let a = IntMatrix::new(rows, cols, data);
            check_snf_contract(&a);
            // Kernel vectors are honest kernel vectors and the kernel is
            // saturated: rank(kernel) + rank(A) = cols.
            let k = kernel_basis(&a);
            for v in &k {
                let av = a.mul_vec(v);
                proptest::prop_assert!(av.iter().all(|x| ExactScalar::is_zero(x)));
            }
            proptest::prop_assert_eq!(k.len() + rank(&a), cols);
            if !k.is_empty() {
                // Saturation: the SNF of the kernel basis matrix has unit factors.
                let kb = IntMatrix::from_cols(cols, k);
                let s = smith_normal_form(&kb);
                for f in s.invariant_factors() {
                    proptest::prop_assert!(f.is_unit());
                }
            }
        }

        #[test]
        fn prop_cokernel_matches_snf(rows in 1usize..4, cols in 0usize..4,
                                     seed in proptest::collection::vec(-6i64..7, 12)) {
            let data: Vec<BigInt> = (0..rows*cols).map(|i| bi(seed[i % seed.len()])).collect();
            let a = IntMatrix::new(rows, cols, data);
            let c = cokernel_invariant_factors(&a, rows);
            let s = smith_normal_form(&a);
            let nontrivial: Vec<BigInt> = s.invariant_factors().into_iter()
                .filter(|f| !f.is_unit()).collect();
            proptest::prop_assert_eq!(c.torsion, nontrivial);
            proptest::prop_assert_eq!(c.free_rank, rows - s.rank);
        }
    }
}
