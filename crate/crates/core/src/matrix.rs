//! Dense rational matrices with exact elimination.
//!
//! Kernel bases and determinants go through fraction-free (Bareiss)
//! elimination on an integer copy of the matrix: every row is first scaled by
//! the lcm of its denominators, which leaves the null space unchanged and
//! multiplies the determinant by a known factor.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("Pfaffian needs an even dimension, got {0}")]
    OddDimension(usize),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("rows have unequal lengths")]
    Ragged,
    #[error("Pfaffian supports at most 64 rows, got {0}")]
    TooLarge(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(
            n,
            n,
            |i, j| if i == j { Rational::one() } else { Rational::zero() },
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatrixError::Ragged);
        }
        let n = rows.len();
        Ok(RationalMatrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience for integer literals in tests and constructions.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch {
                expected: self.rows * self.cols,
                actual: other.rows * other.cols,
            });
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        }))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()
        }))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// `M = -Mᵀ` with a zero diagonal.
    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero() && (i + 1..self.cols).all(|j| *self.get(i, j) == -self.get(j, i))
            })
    }

    /// Integer rows scaled by the lcm of their denominators, plus the scale
    /// factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut scales = Vec::with_capacity(self.rows);
        let rows = (0..self.rows)
            .map(|i| {
                let lcm = self
                    .row(i)
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                let row = self
                    .row(i)
                    .iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect();
                scales.push(lcm);
                row
            })
            .collect();
        (rows, scales)
    }

    /// Exact basis of the null space. Each vector has its first nonzero entry
    /// equal to 1; the list is empty exactly when the kernel is trivial.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (mut m, _) = self.integer_rows();
        let echelon = bareiss_echelon(&mut m, self.cols);
        let pivots = &echelon.pivot_cols;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();

        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate().rev() {
                    let mut acc = Rational::zero();
                    for j in pc + 1..self.cols {
                        if !m[r][j].is_zero() && !v[j].is_zero() {
                            acc += Rational::from_integer(m[r][j].clone()) * &v[j];
                        }
                    }
                    v[pc] = -acc / Rational::from_integer(m[r][pc].clone());
                }
                normalize_leading(v)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let (mut m, _) = self.integer_rows();
        bareiss_echelon(&mut m, self.cols).pivot_cols.len()
    }

    /// Exact determinant by Bareiss elimination.
    pub fn determinant(&self) -> Result<Rational, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (mut m, scales) = self.integer_rows();
        let echelon = bareiss_echelon(&mut m, n);
        if echelon.pivot_cols.len() < n {
            return Ok(Rational::zero());
        }
        let mut det = m[n - 1][n - 1].clone();
        if echelon.swaps % 2 == 1 {
            det = -det;
        }
        let scale: BigInt = scales.iter().product();
        Ok(Rational::from_bigints(det, scale).expect("row scales are nonzero"))
    }

    /// Pfaffian by expansion along the first row,
    /// `Pf(M) = Σ_j (-1)^(j+1) m_{0j} Pf(M without rows/cols 0, j)`,
    /// memoised over the remaining index set.
    pub fn pfaffian(&self) -> Result<Rational, MatrixError> {
        if !self.is_skew_symmetric() {
            return Err(MatrixError::NotSkewSymmetric);
        }
        let n = self.rows;
        if n % 2 == 1 {
            return Err(MatrixError::OddDimension(n));
        }
        if n > 64 {
            return Err(MatrixError::TooLarge(n));
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut memo = HashMap::new();
        Ok(self.pfaffian_of(full, &mut memo))
    }

    fn pfaffian_of(&self, set: u64, memo: &mut HashMap<u64, Rational>) -> Rational {
        if set == 0 {
            return Rational::one();
        }
        if let Some(v) = memo.get(&set) {
            return v.clone();
        }
        let first = set.trailing_zeros() as usize;
        let rest = set & !(1u64 << first);
        let mut total = Rational::zero();
        let mut remaining = rest;
        let mut position = 1usize;
        while remaining != 0 {
            let j = remaining.trailing_zeros() as usize;
            remaining &= remaining - 1;
            let entry = self.get(first, j);
            if !entry.is_zero() {
                let minor = self.pfaffian_of(rest & !(1u64 << j), memo);
                let term = entry * &minor;
                if position % 2 == 1 {
                    total += term;
                } else {
                    total -= &term;
                }
            }
            position += 1;
        }
        memo.insert(set, total.clone());
        total
    }

    /// Unique solution of a square system, or `None` when singular.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Option<Vec<Rational>>, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if rhs.len() != self.rows {
            return Err(MatrixError::DimensionMismatch {
                expected: self.rows,
                actual: rhs.len(),
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(rhs[i].clone());
                row
            })
            .collect();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(None);
            };
            a.swap(c, p);
            let pivot = a[c][c].clone();
            for j in c..=n {
                a[c][j] = &a[c][j] / &pivot;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let factor = a[r][c].clone();
                    for j in c..=n {
                        let delta = &factor * &a[c][j];
                        a[r][j] -= &delta;
                    }
                }
            }
        }
        Ok(Some(a.into_iter().map(|mut row| row.pop().unwrap()).collect()))
    }
}

impl std::fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

struct Echelon {
    pivot_cols: Vec<usize>,
    swaps: usize,
}

/// In-place fraction-free elimination to row echelon form. Every division is
/// exact: after step `k` each entry is a `(k+1)`-minor of the input.
fn bareiss_echelon(m: &mut [Vec<BigInt>], cols: usize) -> Echelon {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivot_cols = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            swaps += 1;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    Echelon { pivot_cols, swaps }
}

fn normalize_leading(v: Vec<Rational>) -> Vec<Rational> {
    match v.iter().find(|x| !x.is_zero()).cloned() {
        Some(lead) => v.into_iter().map(|x| x / &lead).collect(),
        None => v,
    }
}
