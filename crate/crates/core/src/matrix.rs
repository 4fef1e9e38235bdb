//! Dense row-major weight grids.

use std::fmt;

use crate::error::{Error, Result};
use crate::geom::Rect;
use crate::scalar::Weight;

/// A dense `rows x cols` grid of signed weights stored row-major.
///
/// Construction validates the shape (at least one row and one column) and
/// rejects non-finite entries, so every `Matrix` handed to a solver is sound.
/// The type is immutable after construction.
#[derive(Clone, PartialEq)]
pub struct Matrix<T = f64> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Weight> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if rows.checked_mul(cols) != Some(data.len()) {
            return Err(Error::ShapeMismatch { rows, cols, len: data.len() });
        }
        if let Some(idx) = data.iter().position(|v| !v.is_admissible()) {
            return Err(Error::NonFinite { row: idx / cols, col: idx % cols });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::ShapeMismatch { rows: rows.len(), cols, len: data.len() + row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.saturating_mul(cols));
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Result<Self> {
        Self::new(rows, cols, vec![value; rows.saturating_mul(cols)])
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::filled(rows, cols, T::zero())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Always false: a matrix holds at least one entry.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Larger of the two dimensions, the `n` that stride functions are evaluated at.
    #[inline]
    pub fn max_dim(&self) -> usize {
        self.rows.max(self.cols)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[T] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    /// Full-extent rect covering the whole matrix.
    pub fn bounds(&self) -> Rect {
        Rect::from_bounds(0, self.rows - 1, 0, self.cols - 1).expect("non-empty matrix")
    }

    pub fn total(&self) -> T {
        self.data.iter().copied().sum()
    }

    pub fn max_value(&self) -> T {
        self.data.iter().copied().fold(self.data[0], |a, b| if b > a { b } else { a })
    }

    pub fn min_value(&self) -> T {
        self.data.iter().copied().fold(self.data[0], |a, b| if b < a { b } else { a })
    }

    /// Sum of all strictly positive entries, the upper bound on any rect sum.
    pub fn positive_total(&self) -> T {
        self.data.iter().copied().filter(|v| *v > T::zero()).sum()
    }

    /// Direct double-loop sum over `rect`.
    pub fn region_sum(&self, rect: &Rect) -> Result<T> {
        rect.check_within(self.rows, self.cols)?;
        let mut acc = T::zero();
        for r in rect.row_span.lo..=rect.row_span.hi {
            for c in rect.col_span.lo..=rect.col_span.hi {
                acc += self.get(r, c);
            }
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Entrywise conversion into another weight type, validating the result.
    pub fn map<U: Weight>(&self, f: impl FnMut(T) -> U) -> Result<Matrix<U>> {
        Matrix::new(self.rows, self.cols, self.data.iter().copied().map(f).collect())
    }

    /// Numeric cast into another weight type; fails when a value does not fit.
    pub fn cast<U: Weight>(&self) -> Result<Matrix<U>> {
        let mut data = Vec::with_capacity(self.data.len());
        for (idx, v) in self.data.iter().enumerate() {
            match U::from(*v) {
                Some(u) => data.push(u),
                None => {
                    return Err(Error::invalid(format!(
                        "entry at row {}, column {} ({v}) is not representable in the target type",
                        idx / self.cols,
                        idx % self.cols
                    )))
                }
            }
        }
        Matrix::new(self.rows, self.cols, data)
    }
}

impl<T: Weight> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            let row = self.row(r);
            let shown: Vec<String> = row.iter().take(16).map(|v| format!("{v}")).collect();
            let more = if row.len() > 16 { ", ..." } else { "" };
            writeln!(f, "  [{}{more}]", shown.join(", "))?;
        }
        if self.rows > 16 {
            writeln!(f, "  ...")?;
        }
        write!(f, "]")
    }
}
