//! Alternating search over full prefix sums (A-ESS), the baseline the
//! sampling search is measured against.

use crate::error::{Error, Result};
use crate::geom::Interval;
use crate::matrix::Matrix;
use crate::prefix::FullPrefixSums;
use crate::scalar::Weight;
use crate::search::{morph, LineAggregator, SearchResult};

/// Cap used when the caller has no preference. Exact aggregation converges on
/// its own; the cap only guards against floating-point pathologies.
pub const DEFAULT_SAFETY_CAP: usize = 1000;

impl<T: Weight> LineAggregator<T> for FullPrefixSums<T> {
    fn rows(&self) -> usize {
        FullPrefixSums::rows(self)
    }

    fn cols(&self) -> usize {
        FullPrefixSums::cols(self)
    }

    fn aggregate_columns(&self, row_span: Interval, out: &mut [T]) {
        for (j, dst) in out.iter_mut().enumerate() {
            *dst = self.vert(row_span.hi + 1, j) - self.vert(row_span.lo, j);
        }
    }

    fn aggregate_rows(&self, col_span: Interval, out: &mut [T]) {
        for (i, dst) in out.iter_mut().enumerate() {
            *dst = self.horiz(i, col_span.hi + 1) - self.horiz(i, col_span.lo);
        }
    }
}

/// Builds full prefix sums and runs the alternating search.
pub fn aess_search<T: Weight>(m: &Matrix<T>, safety_cap: usize) -> Result<SearchResult<T>> {
    if safety_cap == 0 {
        return Err(Error::invalid("safety cap must be at least 1"));
    }
    Ok(aess_search_prepared(&FullPrefixSums::build(m), safety_cap))
}

/// Search phase only, over prefix sums built by the caller.
pub fn aess_search_prepared<T: Weight>(prefix: &FullPrefixSums<T>, safety_cap: usize) -> SearchResult<T> {
    morph(prefix, safety_cap.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::bentley_max_rect;
    use crate::geom::Rect;
    use crate::search::Termination;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn block_of_ones() {
        let m = Matrix::<i64>::from_fn(4, 4, |r, c| ((1..=2).contains(&r) && (1..=2).contains(&c)) as i64).unwrap();
        let res = aess_search(&m, DEFAULT_SAFETY_CAP).unwrap();
        assert_eq!(bentley_max_rect(&m).sum, 4);
        assert_eq!(res.reported_sum, 4);
        assert_eq!(res.iterations, 1);
        assert_eq!(res.termination, Termination::GainNonpositive);
        assert_eq!(res.trace[0].g, 0);
        // zero margins ahead of the block never drive the running sum
        // negative, so they stay in the box
        assert_eq!(res.rect, Rect::from_bounds(0, 2, 0, 2).unwrap());
        assert_eq!(m.region_sum(&res.rect).unwrap(), 4);
    }

    #[test]
    fn uniform_positive_takes_everything() {
        let m = Matrix::filled(5, 7, 0.5).unwrap();
        assert_eq!(aess_search(&m, 10).unwrap().rect, m.bounds());
    }

    #[test]
    fn all_negative_picks_a_maximal_cell() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = Matrix::<i64>::from_fn(9, 6, |_, _| rng.random_range(-100..=-1)).unwrap();
        let res = aess_search(&m, 10).unwrap();
        assert_eq!(res.rect.area(), 1);
        // the alternating passes settle on a cell that is the largest of its
        // row and of its column; it need not be the global maximum
        let (r, c) = (res.rect.row_span.lo, res.rect.col_span.lo);
        let v = m.get(r, c);
        assert!(m.row(r).iter().all(|&x| x <= v));
        assert!((0..m.rows()).all(|i| m.get(i, c) <= v));
        assert_eq!(res.reported_sum, v);
    }

    #[test]
    fn zero_cap_rejected() {
        assert!(aess_search(&Matrix::<f64>::zeros(2, 2).unwrap(), 0).is_err());
    }

    #[test]
    fn maxima_never_decrease_and_stay_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..100 {
            let (rows, cols) = (rng.random_range(1..40), rng.random_range(1..40));
            let m = Matrix::<i64>::from_fn(rows, cols, |_, _| rng.random_range(-10..=10)).unwrap();
            let res = aess_search(&m, DEFAULT_SAFETY_CAP).unwrap();
            let bound = m.positive_total().max(m.max_value());
            let mut prev = i64::MIN;
            for t in &res.trace {
                assert!(t.s1 >= prev && t.s >= t.s1);
                assert!(t.s <= bound);
                assert_eq!(t.g, t.s - t.s1);
                prev = t.s;
            }
            assert_eq!(m.region_sum(&res.rect).unwrap(), res.reported_sum);
            assert_eq!(res.termination, Termination::GainNonpositive);
            assert_eq!(res.iterations, res.trace.len());
        }
    }
}
