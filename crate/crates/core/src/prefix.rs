//! Full horizontal and vertical prefix-sum tables.

use crate::error::Result;
use crate::geom::Rect;
use crate::matrix::Matrix;
use crate::scalar::Weight;

/// Per-row and per-column running sums with a leading zero.
///
/// `horiz` is `rows x (cols + 1)` with `horiz[r][c + 1] - horiz[r][c] == m[r][c]`;
/// `vert` is `(rows + 1) x cols` with `vert[r + 1][c] - vert[r][c] == m[r][c]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FullPrefixSums<T = f64> {
    rows: usize,
    cols: usize,
    horiz: Vec<T>,
    vert: Vec<T>,
}

impl<T: Weight> FullPrefixSums<T> {
    pub fn build(m: &Matrix<T>) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        let stride = cols + 1;
        let mut horiz = vec![T::zero(); rows * stride];
        let mut vert = vec![T::zero(); (rows + 1) * cols];
        for r in 0..rows {
            let src = m.row(r);
            let h = &mut horiz[r * stride..(r + 1) * stride];
            let mut acc = T::zero();
            for (c, &v) in src.iter().enumerate() {
                acc += v;
                h[c + 1] = acc;
            }
            let (above, below) = vert.split_at_mut((r + 1) * cols);
            let prev = &above[r * cols..];
            for ((dst, &p), &v) in below[..cols].iter_mut().zip(prev).zip(src) {
                *dst = p + v;
            }
        }
        FullPrefixSums { rows, cols, horiz, vert }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Sum of row `r` over columns `[0, c)`.
    #[inline]
    pub fn horiz(&self, r: usize, c: usize) -> T {
        self.horiz[r * (self.cols + 1) + c]
    }

    /// Sum of column `c` over rows `[0, r)`.
    #[inline]
    pub fn vert(&self, r: usize, c: usize) -> T {
        self.vert[r * self.cols + c]
    }

    /// Number of stored table entries.
    pub fn stored_entries(&self) -> usize {
        self.horiz.len() + self.vert.len()
    }

    /// Sum of the entries inside `rect`.
    ///
    /// Runs over the shorter side of the rect, one table difference per line.
    pub fn rect_sum(&self, rect: &Rect) -> Result<T> {
        rect.check_within(self.rows, self.cols)?;
        let (rs, cs) = (rect.row_span, rect.col_span);
        let mut acc = T::zero();
        if rs.len() <= cs.len() {
            for r in rs.lo..=rs.hi {
                acc += self.horiz(r, cs.hi + 1) - self.horiz(r, cs.lo);
            }
        } else {
            for c in cs.lo..=cs.hi {
                acc += self.vert(rs.hi + 1, c) - self.vert(rs.lo, c);
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn horizontal_running_sum() {
        let m = Matrix::<i64>::from_rows(&[[2, -1, 3]]).unwrap();
        let p = FullPrefixSums::build(&m);
        let row: Vec<i64> = (0..=3).map(|c| p.horiz(0, c)).collect();
        assert_eq!(row, vec![0, 2, 1, 4]);
        assert_eq!(p.rect_sum(&m.bounds()).unwrap(), 4);
        assert_eq!(p.rect_sum(&Rect::cell(0, 1)).unwrap(), -1);
    }

    #[test]
    fn zero_matrix_has_zero_tables() {
        let p = FullPrefixSums::build(&Matrix::<f64>::zeros(4, 4).unwrap());
        assert!(p.horiz.iter().chain(&p.vert).all(|v| *v == 0.0));
    }

    #[test]
    fn differences_reconstruct_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = Matrix::<i64>::from_fn(8, 8, |_, _| rng.random_range(-50..=50)).unwrap();
        let p = FullPrefixSums::build(&m);
        for r in 0..8 {
            assert_eq!(p.horiz(r, 0), 0);
            assert_eq!(p.vert(0, r), 0);
            for c in 0..8 {
                assert_eq!(p.horiz(r, c + 1) - p.horiz(r, c), m.get(r, c));
                assert_eq!(p.vert(r + 1, c) - p.vert(r, c), m.get(r, c));
            }
        }
    }

    #[test]
    fn rect_sum_matches_naive_on_random_rects() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = Matrix::<f64>::from_fn(10, 10, |_, _| rng.random_range(-1.0..1.0)).unwrap();
        let p = FullPrefixSums::build(&m);
        for _ in 0..50 {
            let (a, b) = (rng.random_range(0..10), rng.random_range(0..10));
            let (c, d) = (rng.random_range(0..10), rng.random_range(0..10));
            let rect = Rect::from_bounds(a.min(b), a.max(b), c.min(d), c.max(d)).unwrap();
            let fast = p.rect_sum(&rect).unwrap();
            let slow = m.region_sum(&rect).unwrap();
            assert!((fast - slow).abs() <= 1e-9 * slow.abs().max(1.0));
        }
    }

    #[test]
    fn out_of_bounds_rect_is_an_error() {
        let p = FullPrefixSums::build(&Matrix::<f64>::zeros(3, 3).unwrap());
        let err = p.rect_sum(&Rect::from_bounds(0, 3, 0, 0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::OutOfBounds { rows: 3, cols: 3, .. }));
    }
}
