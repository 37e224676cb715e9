//! Dense matrices with exact elimination routines.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{ExactDiv, Field, Ring};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[S]> = (0..self.rows)
            .map(|r| &self.entries[r * self.cols..(r + 1) * self.cols])
            .collect();
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("entries", &rows)
            .finish()
    }
}

impl<S: Ring> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Builds from row vectors; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("ragged rows in matrix literal"));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
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

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    pub fn permute_rows(&self, order: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.cols).collect();
        self.submatrix(order, &all)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).fold(S::zero(), |acc, k| {
                acc + self.get(r, k).clone() * rhs.get(k, c).clone()
            })
        }))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::domain("shape mismatch in matrix difference"));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "vector length must match columns");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

/// Rank and reduced kernel basis of a matrix over a field.
#[derive(Debug, Clone, PartialEq)]
pub struct RankKernel<F> {
    pub rank: usize,
    /// Pivot column of each nonzero row of the reduced row echelon form.
    pub pivot_cols: Vec<usize>,
    /// One vector per free column: 1 at that column, 0 at the other free
    /// columns, so the basis is in reduced echelon form.
    pub kernel: Vec<Vec<F>>,
}

/// Gauss-Jordan elimination to reduced row echelon form.
pub fn rank_kernel<F: Field>(m: &Matrix<F>) -> RankKernel<F> {
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        swap_rows(&mut a, row, p);
        let inv = F::one() / a.get(row, col).clone();
        for c in col..a.cols {
            let v = a.get(row, c).clone() * inv.clone();
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r == row || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in col..a.cols {
                let v = a.get(r, c).clone() - factor.clone() * a.get(row, c).clone();
                a.set(r, c, v);
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivot_cols.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![F::zero(); a.cols];
            v[f] = F::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a.get(r, f).clone();
            }
            v
        })
        .collect();
    RankKernel {
        rank: pivot_cols.len(),
        pivot_cols,
        kernel,
    }
}

fn swap_rows<S: Ring>(a: &mut Matrix<S>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols {
        a.entries.swap(i * a.cols + c, j * a.cols + c);
    }
}

/// Determinant by Bareiss fraction-free elimination over an integral domain.
pub fn bareiss_det<R: Ring + ExactDiv>(m: &Matrix<R>) -> Result<R> {
    if !m.is_square() {
        return Err(Error::domain(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(R::one());
    }
    let mut a = m.clone();
    let mut sign_flips = false;
    let mut prev = R::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a.get(r, k).is_zero()) else {
            return Ok(R::zero());
        };
        if p != k {
            swap_rows(&mut a, k, p);
            sign_flips = !sign_flips;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num =
                    pivot.clone() * a.get(i, j).clone() - a.get(i, k).clone() * a.get(k, j).clone();
                let v = num
                    .exact_div(&prev)
                    .expect("Bareiss division must be exact");
                a.set(i, j, v);
            }
            a.set(i, k, R::zero());
        }
        prev = pivot;
    }
    let det = a.get(n - 1, n - 1).clone();
    Ok(if sign_flips { -det } else { det })
}

/// Pivot structure found by fraction-free row echelon elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotSelection {
    /// Original row index of each pivot, in elimination order.
    pub rows: Vec<usize>,
    /// Pivot columns, increasing.
    pub cols: Vec<usize>,
}

impl PivotSelection {
    pub fn rank(&self) -> usize {
        self.cols.len()
    }
}

/// Fraction-free (Bareiss) row echelon elimination over an integral domain.
///
/// Columns are scanned left to right; the pivot for a column is the first
/// remaining row, in original order, with a nonzero entry. The rank is the
/// rank over the fraction field, and the pivot rows × pivot columns minor is
/// nonzero.
pub fn fraction_free_pivots<R: Ring + ExactDiv>(m: &Matrix<R>) -> PivotSelection {
    let mut a = m.clone();
    let mut order: Vec<usize> = (0..a.rows).collect();
    let mut prev = R::one();
    let mut sel = PivotSelection {
        rows: Vec::new(),
        cols: Vec::new(),
    };
    let mut k = 0;
    for col in 0..a.cols {
        if k == a.rows {
            break;
        }
        let Some(p) = (k..a.rows)
            .filter(|&r| !a.get(r, col).is_zero())
            .min_by_key(|&r| order[r])
        else {
            continue;
        };
        swap_rows(&mut a, k, p);
        order.swap(k, p);
        let pivot = a.get(k, col).clone();
        for i in k + 1..a.rows {
            for j in col + 1..a.cols {
                let num = pivot.clone() * a.get(i, j).clone()
                    - a.get(i, col).clone() * a.get(k, j).clone();
                let v = num
                    .exact_div(&prev)
                    .expect("fraction-free division must be exact");
                a.set(i, j, v);
            }
            a.set(i, col, R::zero());
        }
        sel.rows.push(order[k]);
        sel.cols.push(col);
        prev = pivot;
        k += 1;
    }
    sel
}
