//! Dense matrices over a [`Scalar`] field.
//!
//! Linear maps `k^n → k^m` are stored as `m × n` row-major matrices. Tensor
//! products use the row-major Kronecker convention: basis vector `i ⊗ j` of
//! `k^p ⊗ k^q` has index `i·q + j`. Every other module relies on that
//! convention, so it is fixed here and nowhere else.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Format(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Build from a list of rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Format("ragged matrix rows".into()));
        }
        Self::new(n, m, rows.into_iter().flatten().collect())
    }

    /// Convenience for tests and fixtures: integer entries.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| T::from_int(x)).collect())
            .collect();
        Self::from_rows(rows).expect("rectangular integer literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = T::one();
        }
        m
    }

    /// The `1 × 1` matrix holding `x`.
    pub fn scalar(x: T) -> Self {
        Self {
            rows: 1,
            cols: 1,
            entries: vec![x],
        }
    }

    pub fn column(entries: Vec<T>) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            entries,
        }
    }

    pub fn row(entries: Vec<T>) -> Self {
        Self {
            rows: 1,
            cols: entries.len(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row_vec(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Same entries, new shape.
    pub fn reshape(&self, rows: usize, cols: usize) -> Result<Self> {
        if rows * cols != self.entries.len() {
            return Err(Error::Shape {
                op: "reshape",
                left: self.shape(),
                right: (rows, cols),
            });
        }
        Self::new(rows, cols, self.entries.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x.clone() * k.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Shape {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// `self · other`; skips zero entries of `self`, which dominate the
    /// structure maps this crate multiplies.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
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
                    let slot = &mut out.entries[i * other.cols + j];
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; output row `i_a·b.rows + i_b`, column `j_a·b.cols + j_b`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.get(ia, ja);
                if a.is_zero() {
                    continue;
                }
                for ib in 0..other.rows {
                    for jb in 0..other.cols {
                        let b = other.get(ib, jb);
                        if b.is_zero() {
                            continue;
                        }
                        let r = ia * other.rows + ib;
                        let c = ja * other.cols + jb;
                        out.entries[r * cols + c] = a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    /// Rank by fraction-free (Bareiss) elimination with column skipping.
    pub fn rank(&self) -> usize {
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = T::one();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    m.swap(p * cols + j, rank * cols + j);
                }
            }
            let pivot = m[rank * cols + c].clone();
            for r in rank + 1..rows {
                let lead = m[r * cols + c].clone();
                for j in c + 1..cols {
                    let v = (pivot.clone() * m[r * cols + j].clone()
                        - lead.clone() * m[rank * cols + j].clone())
                        / prev.clone();
                    m[r * cols + j] = v;
                }
                m[r * cols + c] = T::zero();
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Determinant by Bareiss elimination; the last pivot is the determinant.
    pub fn determinant(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::Shape {
                op: "determinant",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m = self.entries.clone();
        let mut prev = T::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !m[r * n + k].is_zero()) else {
                return Ok(T::zero());
            };
            if p != k {
                for j in 0..n {
                    m.swap(p * n + j, k * n + j);
                }
                negate = !negate;
            }
            let pivot = m[k * n + k].clone();
            for r in k + 1..n {
                let lead = m[r * n + k].clone();
                for j in k + 1..n {
                    m[r * n + j] = (pivot.clone() * m[r * n + j].clone()
                        - lead.clone() * m[k * n + j].clone())
                        / prev.clone();
                }
                m[r * n + k] = T::zero();
            }
            prev = pivot;
        }
        let det = m[n * n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Shape {
                op: "inverse",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a.get(r, c).is_zero())
                .ok_or(Error::Singular)?;
            if p != c {
                for j in 0..n {
                    a.entries.swap(p * n + j, c * n + j);
                    inv.entries.swap(p * n + j, c * n + j);
                }
            }
            let pivot = a.get(c, c).clone();
            for j in 0..n {
                a.entries[c * n + j] = a.entries[c * n + j].clone() / pivot.clone();
                inv.entries[c * n + j] = inv.entries[c * n + j].clone() / pivot.clone();
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    a.entries[r * n + j] =
                        a.entries[r * n + j].clone() - f.clone() * a.entries[c * n + j].clone();
                    inv.entries[r * n + j] =
                        inv.entries[r * n + j].clone() - f.clone() * inv.entries[c * n + j].clone();
                }
            }
        }
        Ok(inv)
    }

    /// First position where `self` and `other` differ, if any.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols.max(1), k % self.cols.max(1)))
    }
}

/// `a · b`.
pub fn matmul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    a.matmul(b)
}

/// Kronecker product `a ⊗ b`.
pub fn kron<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    a.kron(b)
}

/// The symmetric braiding `k^{d1} ⊗ k^{d2} → k^{d2} ⊗ k^{d1}`, sending basis
/// index `i·d2 + j` to `j·d1 + i`.
pub fn swap_matrix<T: Scalar>(d1: usize, d2: usize) -> Matrix<T> {
    let n = d1 * d2;
    let mut m = Matrix::zeros(n, n);
    for i in 0..d1 {
        for j in 0..d2 {
            m.set(j * d1 + i, i * d2 + j, T::one());
        }
    }
    m
}

pub fn rank<T: Scalar>(a: &Matrix<T>) -> usize {
    a.rank()
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[r * self.cols + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries(self.entries.chunks(self.cols.max(1)))
            .finish()
    }
}
