//! One-dimensional maximum subarray (Kadane's scan).
//!
//! Conventions shared by every solver in the crate:
//!
//! * the result is never empty, so an all-negative input yields its largest
//!   single element;
//! * the running collection is discarded only when its sum is strictly
//!   negative, and the best record moves only on strict improvement. Among
//!   equal-sum intervals the earliest-starting one, extended no further than
//!   needed, wins;
//! * zeros are ordinary elements. Leading zeros before a positive run are
//!   kept in the collection because its sum never went negative.

use crate::error::{Error, Result};
use crate::geom::Interval;
use crate::probe::Probe;
use crate::scalar::Weight;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubarrayResult<T = f64> {
    pub interval: Interval,
    pub sum: T,
}

pub fn max_subarray<T: Weight>(a: &[T]) -> Result<SubarrayResult<T>> {
    max_subarray_probed(a, &mut ())
}

/// [`max_subarray`] reporting one probe unit per element visited.
pub fn max_subarray_probed<T: Weight, P: Probe>(a: &[T], probe: &mut P) -> Result<SubarrayResult<T>> {
    scan(a.iter().copied(), probe).ok_or_else(|| Error::invalid("maximum subarray of an empty sequence"))
}

/// Kadane over any stream of values; `None` for an empty stream.
///
/// Solvers feed lazily computed aggregates through here so no intermediate
/// array is materialised.
#[inline]
pub(crate) fn scan<T: Weight, P: Probe>(
    values: impl IntoIterator<Item = T>,
    probe: &mut P,
) -> Option<SubarrayResult<T>> {
    let mut it = values.into_iter();
    let first = it.next()?;
    let (mut best, mut best_lo, mut best_hi) = (first, 0, 0);
    let (mut run, mut run_lo) = (first, 0);
    let mut visited = 1;
    for (i, v) in it.enumerate() {
        let i = i + 1;
        if run < T::zero() {
            run = v;
            run_lo = i;
        } else {
            run += v;
        }
        if run > best {
            best = run;
            best_lo = run_lo;
            best_hi = i;
        }
        visited += 1;
    }
    probe.record(visited);
    Some(SubarrayResult { interval: Interval { lo: best_lo, hi: best_hi }, sum: best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe::Counter;
    use proptest::prelude::*;

    /// Interval enumeration: best sum over all nonempty contiguous ranges.
    fn brute_best(a: &[i64]) -> i64 {
        let mut best = i64::MIN;
        for lo in 0..a.len() {
            let mut s = 0;
            for v in &a[lo..] {
                s += v;
                best = best.max(s);
            }
        }
        best
    }

    #[test]
    fn classic_example() {
        let a = [-2i64, 1, -3, 4, -1, 2, 1, -5, 4];
        assert_eq!(brute_best(&a), 6);
        let r = max_subarray(&a).unwrap();
        assert_eq!(r.interval, Interval { lo: 3, hi: 6 });
        assert_eq!(r.sum, 6);
    }

    #[test]
    fn all_negative_returns_max_element() {
        let r = max_subarray(&[-3.0, -1.0, -2.0]).unwrap();
        assert_eq!(r.interval, Interval::single(1));
        assert_eq!(r.sum, -1.0);
    }

    #[test]
    fn zeros_are_ordinary_elements() {
        let a = [0i64, 0, 5, 0];
        assert_eq!(brute_best(&a), 5);
        let r = max_subarray(&a).unwrap();
        assert_eq!(r.sum, 5);
        assert!(r.interval.contains(2));
        // canonical tie-break: collection started at 0, never went negative,
        // stops at the first time 5 was reached
        assert_eq!(r.interval, Interval { lo: 0, hi: 2 });
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(max_subarray::<f64>(&[]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn step_count_is_linear() {
        for n in [1usize, 7, 64, 1000] {
            let a: Vec<i64> = (0..n as i64).map(|i| if i % 3 == 0 { -2 } else { 1 }).collect();
            let mut c = Counter::default();
            max_subarray_probed(&a, &mut c).unwrap();
            assert_eq!(c.count, n as u64);
        }
    }

    proptest! {
        #[test]
        fn matches_enumeration(a in prop::collection::vec(-20i64..=20, 1..=64)) {
            let r = max_subarray(&a).unwrap();
            prop_assert_eq!(r.sum, brute_best(&a));
            let actual: i64 = a[r.interval.lo..=r.interval.hi].iter().sum();
            prop_assert_eq!(actual, r.sum);
        }
    }
}
