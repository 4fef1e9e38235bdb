use crate::error::{Error, Result};
use crate::geom::Interval;
use crate::matrix::Matrix;
use crate::probe::Probe;
use crate::scalar::Weight;
use crate::search::LineAggregator;

/// Prefix sums kept only for the rows and columns on a regular sampling grid.
///
/// Sampled lines are `offset, offset + stride, ...` below the dimension, on
/// both axes. Each sampled row carries a `cols + 1` running sum; each sampled
/// column a `rows + 1` running sum. Column tables are interleaved row-major
/// (`(rows + 1) x sampled_cols`) so building them streams through the matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialPrefixSums<T = f64> {
    rows: usize,
    cols: usize,
    stride: usize,
    offset: usize,
    sampled_rows: Vec<usize>,
    sampled_cols: Vec<usize>,
    row_prefix: Vec<T>,
    col_prefix: Vec<T>,
}

impl<T: Weight> PartialPrefixSums<T> {
    pub fn build(m: &Matrix<T>, stride: usize, offset: usize) -> Result<Self> {
        Self::build_probed(m, stride, offset, &mut ())
    }

    /// [`Self::build`] reporting every matrix entry read to `probe`.
    pub fn build_probed<P: Probe>(m: &Matrix<T>, stride: usize, offset: usize, probe: &mut P) -> Result<Self> {
        if stride == 0 {
            return Err(Error::invalid("stride must be at least 1"));
        }
        if offset >= stride {
            return Err(Error::invalid(format!("offset {offset} must be below the stride {stride}")));
        }
        let (rows, cols) = (m.rows(), m.cols());
        let sampled_rows: Vec<usize> = (offset..rows).step_by(stride).collect();
        let sampled_cols: Vec<usize> = (offset..cols).step_by(stride).collect();

        let width = cols + 1;
        let mut row_prefix = vec![T::zero(); sampled_rows.len() * width];
        for (k, &r) in sampled_rows.iter().enumerate() {
            let dst = &mut row_prefix[k * width..(k + 1) * width];
            let mut acc = T::zero();
            for (c, &v) in m.row(r).iter().enumerate() {
                acc += v;
                dst[c + 1] = acc;
            }
            probe.record(cols);
        }

        let kc = sampled_cols.len();
        let mut col_prefix = vec![T::zero(); (rows + 1) * kc];
        if kc > 0 {
            for r in 0..rows {
                let src = m.row(r);
                let (done, next) = col_prefix.split_at_mut((r + 1) * kc);
                let prev = &done[r * kc..];
                for ((dst, &p), &c) in next[..kc].iter_mut().zip(prev).zip(&sampled_cols) {
                    *dst = p + src[c];
                }
                probe.record(kc);
            }
        }

        Ok(PartialPrefixSums { rows, cols, stride, offset, sampled_rows, sampled_cols, row_prefix, col_prefix })
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn sampled_rows(&self) -> &[usize] {
        &self.sampled_rows
    }

    pub fn sampled_cols(&self) -> &[usize] {
        &self.sampled_cols
    }

    /// Running sum of the `k`-th sampled row (`cols + 1` entries, leading zero).
    pub fn row_table(&self, k: usize) -> &[T] {
        let width = self.cols + 1;
        &self.row_prefix[k * width..(k + 1) * width]
    }

    /// Running sum of the `k`-th sampled column (`rows + 1` entries, leading zero).
    pub fn col_table(&self, k: usize) -> Vec<T> {
        let kc = self.sampled_cols.len();
        (0..=self.rows).map(|r| self.col_prefix[r * kc + k]).collect()
    }

    /// Number of prefix entries held in memory.
    pub fn stored_entries(&self) -> usize {
        self.row_prefix.len() + self.col_prefix.len()
    }

    /// Column sums over `row_span` at sampled columns, zeros elsewhere.
    pub fn sampled_col_aggregate(&self, row_span: Interval) -> Vec<T> {
        let mut out = vec![T::zero(); self.cols];
        self.aggregate_columns(row_span, &mut out);
        out
    }

    /// Row sums over `col_span` at sampled rows, zeros elsewhere.
    pub fn sampled_row_aggregate(&self, col_span: Interval) -> Vec<T> {
        let mut out = vec![T::zero(); self.rows];
        self.aggregate_rows(col_span, &mut out);
        out
    }
}

impl<T: Weight> LineAggregator<T> for PartialPrefixSums<T> {
    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn aggregate_columns(&self, row_span: Interval, out: &mut [T]) {
        out.fill(T::zero());
        let kc = self.sampled_cols.len();
        let top = &self.col_prefix[row_span.lo * kc..(row_span.lo + 1) * kc];
        let bottom = &self.col_prefix[(row_span.hi + 1) * kc..(row_span.hi + 2) * kc];
        for ((&c, &b), &t) in self.sampled_cols.iter().zip(bottom).zip(top) {
            out[c] = b - t;
        }
    }

    fn aggregate_rows(&self, col_span: Interval, out: &mut [T]) {
        out.fill(T::zero());
        let width = self.cols + 1;
        for (k, &r) in self.sampled_rows.iter().enumerate() {
            let table = &self.row_prefix[k * width..(k + 1) * width];
            out[r] = table[col_span.hi + 1] - table[col_span.lo];
        }
    }
}
