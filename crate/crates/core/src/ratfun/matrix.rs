//! Matrices of rational functions.
//!
//! Inversion is exact Gauss-Jordan elimination over the field of rational
//! functions; every intermediate entry is kept in canonical form, so
//! pole/zero cancellations happen by exact GCD rather than by tolerance.

use super::func::RationalFunction;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use num::rational::BigRational;
use num_complex::Complex64;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct TransferMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RationalFunction>,
}

impl TransferMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RationalFunction>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry grid dimension mismatch");
        TransferMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RationalFunction,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        TransferMatrix::new(rows, cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        TransferMatrix::from_fn(rows, cols, |_, _| RationalFunction::zero())
    }

    pub fn identity(n: usize) -> Self {
        TransferMatrix::from_fn(n, n, |i, j| {
            if i == j {
                RationalFunction::one()
            } else {
                RationalFunction::zero()
            }
        })
    }

    /// `sI - M` for a constant rational matrix `M`.
    pub fn s_identity_minus(m: &[Vec<BigRational>]) -> Self {
        let n = m.len();
        TransferMatrix::from_fn(n, n, |i, j| {
            if i == j {
                RationalFunction::from_polynomial(Polynomial::linear(-&m[i][j]))
            } else {
                RationalFunction::from_polynomial(Polynomial::constant(-&m[i][j]))
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: RationalFunction) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, rhs: &TransferMatrix) -> TransferMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        TransferMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    pub fn sub(&self, rhs: &TransferMatrix) -> TransferMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        TransferMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }

    pub fn mul(&self, rhs: &TransferMatrix) -> TransferMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        TransferMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = RationalFunction::zero();
            for k in 0..self.cols {
                let term = self.get(i, k) * rhs.get(k, j);
                if !term.is_zero() {
                    acc = &acc + &term;
                }
            }
            acc
        })
    }

    /// Exact determinant by elimination with pivot tracking.
    pub fn determinant(&self) -> RationalFunction {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut det = RationalFunction::one();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !work.get(r, col).is_zero());
            let pivot_row = match pivot_row {
                Some(r) => r,
                None => return RationalFunction::zero(),
            };
            if pivot_row != col {
                for j in 0..n {
                    let a = work.get(col, j).clone();
                    let b = work.get(pivot_row, j).clone();
                    work.set(col, j, b);
                    work.set(pivot_row, j, a);
                }
                det = -&det;
            }
            let pivot = work.get(col, col).clone();
            det = &det * &pivot;
            for r in (col + 1)..n {
                let factor = work.get(r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let updated = work.get(r, j) - &(&factor * work.get(col, j));
                    work.set(r, j, updated);
                }
            }
        }
        det
    }

    /// Exact inverse via Gauss-Jordan. Fails with a witness when the
    /// determinant is identically zero.
    pub fn inverse(&self) -> Result<TransferMatrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = TransferMatrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !work.get(r, col).is_zero());
            let pivot_row = pivot_row.ok_or_else(|| Error::SingularMatrix {
                witness: format!("column {} has no nonzero pivot below row {}", col + 1, col + 1),
            })?;
            if pivot_row != col {
                work.swap_rows(col, pivot_row);
                inv.swap_rows(col, pivot_row);
            }
            let pivot = work.get(col, col).clone();
            let pivot_inv = pivot.recip().expect("pivot is nonzero");
            for j in 0..n {
                let w = work.get(col, j) * &pivot_inv;
                work.set(col, j, w);
                let v = inv.get(col, j) * &pivot_inv;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = work.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let w = work.get(r, j) - &(&factor * work.get(col, j));
                    work.set(r, j, w);
                    let v = inv.get(r, j) - &(&factor * inv.get(col, j));
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Sample every entry at a complex point.
    pub fn eval_complex(&self, z: Complex64) -> Result<Vec<Vec<Complex64>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.get(i, j).eval_complex(z)?);
            }
            out.push(row);
        }
        Ok(out)
    }
}

impl fmt::Debug for TransferMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TransferMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}
