//! Exact sparse rational linear algebra.
//!
//! All kernel/rank/solvability questions in the crate reduce to systems over
//! arbitrary-precision rationals. Elimination is fraction-free
//! (Bareiss one-step) on integer-scaled rows to keep intermediate numerators
//! under control; back-substitution normalizes to lowest terms. Pivoting is
//! fully deterministic: first nonzero entry scanning columns in ascending
//! order, rows in ascending index, so kernel bases are reproducible.

use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse matrix over Q. No zero entry is ever stored and every stored
/// rational is in lowest terms with positive denominator (both are upheld by
/// `BigRational` plus the insertion path).
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&n| rat(n)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn row(&self, r: usize) -> Vec<Rational> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            m.set(c, r, v.clone());
        }
        m
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut m = Self::zero(self.rows, self.cols);
        if k.is_zero() {
            return m;
        }
        for (r, c, v) in self.iter() {
            m.set(r, c, v * k);
        }
        m
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
                context: "matrix addition".into(),
            });
        }
        let mut m = self.clone();
        for (r, c, v) in other.iter() {
            let cur = m.get(r, c);
            m.set(r, c, cur + v);
        }
        Ok(m)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                got: other.rows,
                context: "matrix multiplication".into(),
            });
        }
        let mut m = Self::zero(self.rows, other.cols);
        // Group rhs entries by row so the product stays sparse.
        let mut rhs_by_row: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (r, c, v) in other.iter() {
            rhs_by_row.entry(r).or_default().push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (r, k, a) in self.iter() {
            if let Some(row) = rhs_by_row.get(&k) {
                for (c, b) in row {
                    let e = acc.entry((r, *c)).or_insert_with(Rational::zero);
                    *e += a * *b;
                }
            }
        }
        for ((r, c), v) in acc {
            m.set(r, c, v);
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                got: v.len(),
                context: "matrix-vector product".into(),
            });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (r, c, a) in self.iter() {
            out[r] += a * &v[c];
        }
        Ok(out)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of solving `a x = b` exactly.
///
/// A `Solution` substitutes back exactly; an `Inconsistent` outcome carries a
/// row combination `w` of the original rows with `wᵀa = 0` and `wᵀb ≠ 0`,
/// i.e. a certificate that `0 = nonzero` follows from the system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution(Vec<Rational>),
    Inconsistent { witness_row: Vec<Rational> },
}

/// Row-echelon data produced by fraction-free elimination. `rows` are the
/// eliminated (integer) rows including any carried columns; `pivots` maps
/// pivot order to (row index, column index) within the leading `pivot_cols`.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<(usize, usize)>,
}

/// Bareiss one-step fraction-free elimination. Pivot search is limited to
/// the first `pivot_cols` columns; any trailing columns ride along through
/// the same row operations. Exact integer divisions by the previous pivot
/// keep entry growth polynomial.
fn fraction_free_echelon(mut rows: Vec<Vec<BigInt>>, pivot_cols: usize) -> Echelon {
    let nrows = rows.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev_pivot = BigInt::one();
    let mut pivot_row = 0usize;
    for col in 0..pivot_cols {
        if pivot_row >= nrows {
            break;
        }
        let found = (pivot_row..nrows).find(|&r| !rows[r][col].is_zero());
        let Some(r0) = found else { continue };
        rows.swap(pivot_row, r0);
        let pivot = rows[pivot_row][col].clone();
        // One-step Bareiss rescales every lower row, including zero-lead
        // ones; the division by the previous pivot is exact.
        for r in pivot_row + 1..nrows {
            let lead = rows[r][col].clone();
            for c in 0..rows[r].len() {
                let val = &pivot * &rows[r][c] - &lead * &rows[pivot_row][c];
                rows[r][c] = val / &prev_pivot;
            }
        }
        pivots.push((pivot_row, col));
        prev_pivot = pivot;
        pivot_row += 1;
    }
    Echelon { rows, pivots }
}

/// Scale a rational row to integers, returning the (positive) scale factor.
fn scale_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::one();
    for v in row {
        l = num::integer::lcm(l, v.denom().clone());
    }
    let ints = row.iter().map(|v| (v * &l).to_integer()).collect();
    (ints, l)
}

fn to_int_rows(m: &RationalMatrix, extra: Option<&[Rational]>) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows());
    let mut scales = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut row = m.row(r);
        if let Some(b) = extra {
            row.push(b[r].clone());
        }
        let (ints, s) = scale_row(&row);
        rows.push(ints);
        scales.push(s);
    }
    (rows, scales)
}

/// Reduced row-echelon form over Q of the pivot block, derived from a
/// fraction-free echelon by normalizing pivots to 1 and eliminating upward.
/// Returns the full rational rows (carried columns included) and pivot columns.
fn rref(ech: &Echelon) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut rows: Vec<Vec<Rational>> = ech
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
    for (k, &(r, c)) in ech.pivots.iter().enumerate().rev() {
        let p = rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v /= p.clone();
        }
        for above in 0..k {
            let (ar, _) = ech.pivots[above];
            let factor = rows[ar][c].clone();
            if factor.is_zero() {
                continue;
            }
            let pivot_row = rows[r].clone();
            for (v, pv) in rows[ar].iter_mut().zip(pivot_row.iter()) {
                *v -= &factor * pv;
            }
        }
    }
    (rows, pivot_cols)
}

/// Exact rank over Q.
pub fn rank(m: &RationalMatrix) -> usize {
    let (rows, _) = to_int_rows(m, None);
    fraction_free_echelon(rows, m.cols()).pivots.len()
}

/// Basis of the right null space `{v : m v = 0}`, one vector per free column
/// in ascending column order. Together the vectors form a reduced-echelon
/// basis: vector `k` has a 1 in its free column and zeros in every other
/// free column.
pub fn kernel(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let n = m.cols();
    let (rows, _) = to_int_rows(m, None);
    let ech = fraction_free_echelon(rows, n);
    let (rr, pivot_cols) = rref(&ech);
    let is_pivot = |c: usize| pivot_cols.contains(&c);
    let mut basis = Vec::new();
    for free in 0..n {
        if is_pivot(free) {
            continue;
        }
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (k, &pc) in pivot_cols.iter().enumerate() {
            let (r, _) = ech.pivots[k];
            v[pc] = -rr[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve `a x = b` exactly. Free variables are set to 0 so the answer is
/// deterministic; inconsistency comes with a verifiable witness combination
/// of the original rows.
pub fn solve(a: &RationalMatrix, b: &[Rational]) -> Result<SolveOutcome> {
    if b.len() != a.rows() {
        return Err(Error::Dimension {
            expected: a.rows(),
            got: b.len(),
            context: "solve right-hand side".into(),
        });
    }
    let n = a.cols();
    let nrows = a.rows();
    let (mut rows, scales) = to_int_rows(a, Some(b));
    // Append an identity block that tracks the row operations: after
    // elimination, row r of the tracked block expresses row r as a
    // combination of the scaled input rows.
    for (r, row) in rows.iter_mut().enumerate() {
        for t in 0..nrows {
            row.push(if t == r {
                BigInt::one()
            } else {
                BigInt::zero()
            });
        }
    }
    let ech = fraction_free_echelon(rows, n);
    // Inconsistency: a row with zero coefficient part but nonzero rhs.
    for row in &ech.rows {
        if row[..n].iter().all(Zero::is_zero) && !row[n].is_zero() {
            let witness: Vec<Rational> = (0..nrows)
                .map(|t| Rational::from_integer(row[n + 1 + t].clone()) * &scales[t])
                .collect();
            debug_assert!({
                let wa = a.transpose().mul_vec(&witness)?;
                let wb: Rational = witness.iter().zip(b.iter()).map(|(w, x)| w * x).sum();
                wa.iter().all(Zero::is_zero) && !wb.is_zero()
            });
            return Ok(SolveOutcome::Inconsistent {
                witness_row: witness,
            });
        }
    }
    let (rr, pivot_cols) = rref(&ech);
    let mut x = vec![Rational::zero(); n];
    for (k, &pc) in pivot_cols.iter().enumerate() {
        let (r, _) = ech.pivots[k];
        // After RREF the pivot row reads x_pc + Σ free terms = rhs; free
        // variables are zero, so x_pc is just the rhs entry.
        x[pc] = rr[r][n].clone();
    }
    debug_assert_eq!(a.mul_vec(&x)?, b.to_vec());
    Ok(SolveOutcome::Solution(x))
}

/// Canonical echelon basis (RREF rows) for the span of the given vectors.
pub fn echelon_basis(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RationalMatrix::from_rows(vectors);
    let (rows, _) = to_int_rows(&m, None);
    let ech = fraction_free_echelon(rows, m.cols());
    let (rr, pivot_cols) = rref(&ech);
    (0..pivot_cols.len())
        .map(|k| {
            let (r, _) = ech.pivots[k];
            rr[r][..m.cols()].to_vec()
        })
        .collect()
}

/// Pivot columns of the echelon basis for the span of `vectors`.
pub fn pivot_columns(vectors: &[Vec<Rational>]) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RationalMatrix::from_rows(vectors);
    let (rows, _) = to_int_rows(&m, None);
    fraction_free_echelon(rows, m.cols())
        .pivots
        .iter()
        .map(|&(_, c)| c)
        .collect()
}

/// Express `target` in the span of `basis` rows, if possible.
pub fn in_span(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    if basis.is_empty() {
        return if target.iter().all(Zero::is_zero) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let m = RationalMatrix::from_rows(basis).transpose();
    match solve(&m, target).expect("dimensions match by construction") {
        SolveOutcome::Solution(c) => Some(c),
        SolveOutcome::Inconsistent { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rm(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_int_rows(rows)
    }

    /// Naive rational Gaussian elimination, used as an independent oracle
    /// for the fraction-free path.
    fn naive_rank(m: &RationalMatrix) -> usize {
        let mut a = m.to_dense();
        let (rows, cols) = (m.rows(), m.cols());
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank][col].clone();
            for r in 0..rows {
                if r == rank || a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &pivot;
                let prow = a[rank].clone();
                for (v, pv) in a[r].iter_mut().zip(prow.iter()) {
                    *v -= &f * pv;
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn kernel_rank_one_matrix() {
        let k = kernel(&rm(&[vec![1, 2], vec![2, 4]]));
        assert_eq!(k, vec![vec![rat(-2), rat(1)]]);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(kernel(&RationalMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_zero_map() {
        let k = kernel(&rm(&[vec![0, 0]]));
        assert_eq!(k, vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]);
    }

    #[test]
    fn solve_inconsistent_selects_second_row() {
        let a = rm(&[vec![1], vec![0]]);
        match solve(&a, &[rat(0), rat(1)]).unwrap() {
            SolveOutcome::Inconsistent { witness_row } => {
                assert_eq!(witness_row, vec![rat(0), rat(1)]);
            }
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn solve_identity() {
        let a = RationalMatrix::identity(2);
        let out = solve(&a, &[rat(3), ratio(-1, 2)]).unwrap();
        assert_eq!(out, SolveOutcome::Solution(vec![rat(3), ratio(-1, 2)]));
    }

    #[test]
    fn solve_zeroes_free_variables() {
        let a = rm(&[vec![1, 1]]);
        let out = solve(&a, &[rat(5)]).unwrap();
        assert_eq!(out, SolveOutcome::Solution(vec![rat(5), rat(0)]));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&rm(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        // Nilpotent Jordan block J_4(0).
        let j4 = rm(&[
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 0, 0],
        ]);
        assert_eq!(rank(&j4), 3);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = rm(&[vec![1, 2]]);
        assert!(matches!(
            solve(&a, &[rat(1), rat(2)]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn echelon_basis_is_canonical() {
        let b = echelon_basis(&[
            vec![rat(2), rat(4), rat(0)],
            vec![rat(1), rat(2), rat(1)],
            vec![rat(3), rat(6), rat(1)],
        ]);
        assert_eq!(
            b,
            vec![vec![rat(1), rat(2), rat(0)], vec![rat(0), rat(0), rat(1)]]
        );
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
    }

    fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(small_rational(), c), r)
                .prop_map(|rows| RationalMatrix::from_rows(&rows))
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(m in small_matrix()) {
            for v in kernel(&m) {
                let mv = m.mul_vec(&v).unwrap();
                prop_assert!(mv.iter().all(num::Zero::is_zero));
            }
        }

        #[test]
        fn rank_nullity(m in small_matrix()) {
            prop_assert_eq!(rank(&m) + kernel(&m).len(), m.cols());
        }

        #[test]
        fn rank_agrees_with_naive_elimination(m in small_matrix()) {
            prop_assert_eq!(rank(&m), naive_rank(&m));
        }

        #[test]
        fn solve_certificates_verify(m in small_matrix(), seed in proptest::collection::vec(small_rational(), 1..=4)) {
            let b: Vec<Rational> = (0..m.rows())
                .map(|i| seed.get(i % seed.len()).cloned().unwrap())
                .collect();
            match solve(&m, &b).unwrap() {
                SolveOutcome::Solution(x) => {
                    prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
                }
                SolveOutcome::Inconsistent { witness_row } => {
                    let wa = m.transpose().mul_vec(&witness_row).unwrap();
                    prop_assert!(wa.iter().all(num::Zero::is_zero));
                    let wb: Rational = witness_row.iter().zip(b.iter()).map(|(w, x)| w * x).sum();
                    prop_assert!(!wb.is_zero());
                }
            }
        }
    }
}
