//! Exact solvers: exhaustive enumeration and Bentley's column-pair scan.

use crate::geom::{Interval, Rect};
use crate::kadane;
use crate::matrix::Matrix;
use crate::scalar::Weight;

/// A globally optimal rect and its sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactResult<T = f64> {
    pub rect: Rect,
    pub sum: T,
}

/// Examines every submatrix and sums each one from scratch.
///
/// Sixth-power time in the side length; meant as a test oracle for inputs up
/// to roughly 16x16. Ties resolve to the lexicographically smallest
/// `(row_lo, col_lo, row_hi, col_hi)`.
pub fn brute_force_max_rect<T: Weight>(m: &Matrix<T>) -> ExactResult<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut best = ExactResult { rect: Rect::cell(0, 0), sum: m.get(0, 0) };
    for r0 in 0..rows {
        for c0 in 0..cols {
            for r1 in r0..rows {
                for c1 in c0..cols {
                    let mut s = T::zero();
                    for r in r0..=r1 {
                        for c in c0..=c1 {
                            s += m.get(r, c);
                        }
                    }
                    if s > best.sum {
                        best = ExactResult {
                            rect: Rect::new(Interval { lo: r0, hi: r1 }, Interval { lo: c0, hi: c1 }),
                            sum: s,
                        };
                    }
                }
            }
        }
    }
    best
}

/// Bentley's algorithm: for every column pair `[x1, x2]`, aggregate each row
/// across the pair in constant time from the horizontal prefix table and run
/// Kadane down the resulting column. `O(cols^2 * rows)` time.
pub fn bentley_max_rect<T: Weight>(m: &Matrix<T>) -> ExactResult<T> {
    let (rows, cols) = (m.rows(), m.cols());
    // horizontal prefix table stored column-major so each row aggregate
    // reads two contiguous slices
    let mut table = vec![T::zero(); (cols + 1) * rows];
    for c in 0..cols {
        let (done, next) = table.split_at_mut((c + 1) * rows);
        let prev = &done[c * rows..];
        for r in 0..rows {
            next[r] = prev[r] + m.get(r, c);
        }
    }

    let mut best: Option<ExactResult<T>> = None;
    for x1 in 0..cols {
        let left = &table[x1 * rows..(x1 + 1) * rows];
        for x2 in x1..cols {
            let right = &table[(x2 + 1) * rows..(x2 + 2) * rows];
            let column = right.iter().zip(left).map(|(&r, &l)| r - l);
            let found = kadane::scan(column, &mut ()).expect("rows > 0");
            if best.is_none_or(|b| found.sum > b.sum) {
                best =
                    Some(ExactResult { rect: Rect::new(found.interval, Interval { lo: x1, hi: x2 }), sum: found.sum });
            }
        }
    }
    best.expect("cols > 0")
}
