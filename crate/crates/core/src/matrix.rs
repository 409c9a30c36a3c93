//! Dense matrices over the rationals with exact linear algebra.
//!
//! Rank, kernel and inverse all run through one fraction-free (Bareiss/Montante)
//! elimination on an integer matrix obtained by clearing denominators row by
//! row. The two-term update rule divides exactly at every step, which keeps
//! intermediate entries near determinant size instead of blowing up the way
//! naive rational pivoting does.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{denominator_lcm, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("SingularMatrix: rank {rank} < size {size}")]
    SingularMatrix { rank: usize, size: usize },
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
}

/// Row-major dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count != rows * cols");
        Self { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Builder from i64 rows, for tests and fixed tables.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| crate::rational::rat(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// Columns `lo..hi` as a new matrix.
    pub fn column_slice(&self, lo: usize, hi: usize) -> Self {
        assert!(lo <= hi && hi <= self.cols, "column range out of bounds");
        Self::from_fn(self.rows, hi - lo, |i, j| self[(i, lo + j)].clone())
    }

    /// Rows `lo..hi` as a new matrix.
    pub fn row_slice(&self, lo: usize, hi: usize) -> Self {
        assert!(lo <= hi && hi <= self.rows, "row range out of bounds");
        Self::from_fn(hi - lo, self.cols, |i, j| self[(lo + i, j)].clone())
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack width mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self::new(self.rows + other.rows, self.cols, entries)
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack height mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape mismatch");
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape mismatch");
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul shape mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                if !self[(i, k)].is_zero() && !other[(k, j)].is_zero() {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
            }
            acc
        })
    }

    /// Exact rank over Q.
    pub fn rank(&self) -> usize {
        self.reduce().rank
    }

    /// Basis of the right kernel, one vector per column.
    ///
    /// The basis is canonical: free coordinate `f` carries a 1 in "its" column
    /// and 0 in every other free coordinate, columns ordered by increasing
    /// free-column index. Column count is always `cols - rank`.
    pub fn kernel(&self) -> RationalMatrix {
        let red = self.reduce();
        let free: Vec<usize> = (0..self.cols).filter(|j| !red.pivot_cols.contains(j)).collect();
        let mut out = RationalMatrix::zero(self.cols, free.len());
        let d = Rational::from_integer(red.divisor.clone());
        for (k, &f) in free.iter().enumerate() {
            out[(f, k)] = Rational::one();
            for (i, &p) in red.pivot_cols.iter().enumerate() {
                // row i of the reduced matrix reads d*x_p + R[i,f]*x_f = 0
                let coeff = Rational::from_integer(red.matrix[i * self.cols + f].clone());
                out[(p, k)] = -coeff / &d;
            }
        }
        out
    }

    /// Exact inverse; fails with `SingularMatrix` when the rank drops.
    pub fn inverse(&self) -> Result<RationalMatrix, MatrixError> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let red = aug.reduce_leading(n);
        if red.rank < n {
            return Err(MatrixError::SingularMatrix { rank: red.rank, size: n });
        }
        let d = Rational::from_integer(red.divisor.clone());
        // pivot order is the row order because the left block has full rank
        let mut inv = RationalMatrix::zero(n, n);
        for i in 0..n {
            let p = red.pivot_cols[i];
            for j in 0..n {
                inv[(p, j)] = Rational::from_integer(red.matrix[i * 2 * n + n + j].clone()) / &d;
            }
        }
        Ok(inv)
    }

    /// One particular solution of `self * x = rhs`, if any.
    pub fn solve(&self, rhs: &RationalMatrix) -> Option<RationalMatrix> {
        assert_eq!(rhs.cols, 1, "solve expects a column vector");
        assert_eq!(rhs.rows, self.rows, "solve shape mismatch");
        let aug = self.hstack(rhs);
        let red = aug.reduce_leading(self.cols);
        // rows past the rank are zero in every leading column; a nonzero
        // rhs entry there means the system is inconsistent
        for i in red.rank..self.rows {
            if !red.matrix[i * aug.cols + self.cols].is_zero() {
                return None;
            }
        }
        let d = Rational::from_integer(red.divisor.clone());
        let mut x = RationalMatrix::zero(self.cols, 1);
        for (i, &p) in red.pivot_cols.iter().enumerate() {
            x[(p, 0)] = Rational::from_integer(red.matrix[i * aug.cols + self.cols].clone()) / &d;
        }
        Some(x)
    }

    fn reduce(&self) -> Reduced {
        self.reduce_leading(self.cols)
    }

    /// Montante-style fraction-free Gauss-Jordan, pivoting only within the
    /// first `lead` columns. After the sweep, each pivot column holds the
    /// common divisor at its pivot row and zeros elsewhere.
    fn reduce_leading(&self, lead: usize) -> Reduced {
        let mut m: Vec<BigInt> = {
            let mut v = Vec::with_capacity(self.entries.len());
            for i in 0..self.rows {
                let l = denominator_lcm(self.row(i));
                for x in self.row(i) {
                    let scaled = x * Rational::from_integer(l.clone());
                    debug_assert!(scaled.denom().is_one());
                    v.push(scaled.numer().clone());
                }
            }
            v
        };
        let cols = self.cols;
        let mut pivot_cols = Vec::new();
        let mut prev = BigInt::one();
        let mut rank = 0usize;
        for col in 0..lead.min(cols) {
            let Some(pr) = (rank..self.rows).find(|&i| !m[i * cols + col].is_zero()) else {
                continue;
            };
            if pr != rank {
                for j in 0..cols {
                    m.swap(pr * cols + j, rank * cols + j);
                }
            }
            let pivot = m[rank * cols + col].clone();
            for i in 0..self.rows {
                if i == rank {
                    continue;
                }
                let lead_entry = m[i * cols + col].clone();
                for j in 0..cols {
                    let a = &m[rank * cols + j] * &lead_entry;
                    let b = &m[i * cols + j] * &pivot;
                    let num = b - a;
                    let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                    debug_assert!(r.is_zero(), "Bareiss exact division failed");
                    m[i * cols + j] = q;
                }
            }
            prev = pivot;
            pivot_cols.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        // the Gauss-Jordan sweep leaves every pivot entry equal to the last pivot
        debug_assert!(pivot_cols.iter().enumerate().all(|(i, &p)| m[i * cols + p] == prev));
        // a negative divisor flips every sign, harmless but keep it positive
        if prev.is_negative() {
            prev = -prev;
            for x in m.iter_mut() {
                *x = -x.clone();
            }
        }
        Reduced { matrix: m, pivot_cols, divisor: prev, rank }
    }
}

struct Reduced {
    matrix: Vec<BigInt>,
    pivot_cols: Vec<usize>,
    divisor: BigInt,
    rank: usize,
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl std::fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(crate::rational::format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    // brute-force rank oracle: largest k with a nonzero k x k minor
    fn rank_by_minors(m: &RationalMatrix) -> usize {
        fn det(m: &RationalMatrix, rows: &[usize], cols: &[usize]) -> Rational {
            if rows.is_empty() {
                return Rational::one();
            }
            let mut acc = Rational::zero();
            for (k, &c) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = det(m, &rows[1..], &sub_cols);
                let term = &m[(rows[0], c)] * minor;
                if k % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in subsets(n, k - 1) {
                    if rest.iter().all(|&x| x > first) {
                        let mut s = vec![first];
                        s.append(&mut rest);
                        out.push(s);
                    }
                }
            }
            out
        }
        for k in (1..=m.rows().min(m.cols())).rev() {
            for rows in subsets(m.rows(), k) {
                for cols in subsets(m.cols(), k) {
                    if !det(m, &rows, &cols).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(RationalMatrix::identity(2).rank(), 2);
        assert_eq!(RationalMatrix::zero(2, 2).rank(), 0);
    }

    #[test]
    fn rank_of_dependent_rows() {
        // second row is twice the first; the 2x2 determinant oracle agrees
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(rank_by_minors(&m), 1);
    }

    #[test]
    fn rank_matches_minor_oracle_on_seeded_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let r = rng.gen_range(1..=4);
            let c = rng.gen_range(1..=4);
            let m = RationalMatrix::from_fn(r, c, |_, _| ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
            assert_eq!(m.rank(), rank_by_minors(&m), "matrix:\n{m}");
        }
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert_eq!(RationalMatrix::identity(3).kernel().cols(), 0);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let k = RationalMatrix::zero(2, 3).kernel();
        assert_eq!(k.cols(), 3);
        assert_eq!(k, RationalMatrix::identity(3));
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = RationalMatrix::from_i64(&[&[1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
        // spans {(1,-1,0),(0,0,1)}: check both lie in the kernel and dims agree
        let v = RationalMatrix::from_i64(&[&[1], &[-1], &[0]]);
        assert!(m.mul(&v).is_zero());
        assert_eq!(m.rank() + k.cols(), m.cols());
    }

    #[test]
    fn rank_nullity_on_seeded_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..60 {
            let r = rng.gen_range(1..=5);
            let c = rng.gen_range(1..=5);
            let m = RationalMatrix::from_fn(r, c, |_, _| rat(rng.gen_range(-4..=4)));
            let k = m.kernel();
            assert_eq!(m.rank() + k.cols(), m.cols());
            assert!(m.mul(&k).is_zero());
            if k.cols() > 0 {
                assert_eq!(k.rank(), k.cols(), "kernel basis must be independent");
            }
        }
    }

    #[test]
    fn inverse_identity() {
        let i = RationalMatrix::identity(3);
        assert_eq!(i.inverse().unwrap(), i);
    }

    #[test]
    fn inverse_diagonal() {
        let m = RationalMatrix::from_i64(&[&[2, 0], &[0, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv[(0, 0)], ratio(1, 2));
        assert_eq!(inv[(1, 1)], ratio(1, 4));
        assert_eq!(m.mul(&inv), RationalMatrix::identity(2));
    }

    #[test]
    fn inverse_unipotent() {
        let m = RationalMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, RationalMatrix::from_i64(&[&[1, -1], &[0, 1]]));
    }

    #[test]
    fn inverse_rejects_singular() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse(), Err(MatrixError::SingularMatrix { rank: 1, size: 2 }));
    }

    #[test]
    fn inverse_times_original_on_seeded_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut done = 0;
        while done < 25 {
            let n = rng.gen_range(1..=5);
            let m = RationalMatrix::from_fn(n, n, |_, _| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=2)));
            if let Ok(inv) = m.inverse() {
                assert_eq!(m.mul(&inv), RationalMatrix::identity(n));
                assert_eq!(inv.mul(&m), RationalMatrix::identity(n));
                done += 1;
            }
        }
    }

    #[test]
    fn solve_simple_system() {
        let m = RationalMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        let rhs = RationalMatrix::from_i64(&[&[5], &[10]]);
        let x = m.solve(&rhs).unwrap();
        assert_eq!(m.mul(&x), rhs);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = RationalMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        let rhs = RationalMatrix::from_i64(&[&[0], &[1]]);
        assert!(m.solve(&rhs).is_none());
    }
}
