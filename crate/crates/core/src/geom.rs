//! Inclusive index ranges and axis-aligned rectangles.
//!
//! All bounds are 0-based and inclusive. Rows are the vertical axis and
//! columns the horizontal one, so a rect's `row_span` holds the top and
//! bottom bounds and its `col_span` the left and right bounds.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inclusive range `[lo, hi]` of indices with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    #[inline]
    pub fn single(idx: usize) -> Self {
        Interval { lo: idx, hi: idx }
    }

    /// The interval `[0, len - 1]`; `len` must be positive.
    #[inline]
    pub fn full(len: usize) -> Self {
        debug_assert!(len > 0);
        Interval { lo: 0, hi: len - 1 }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn contains(&self, idx: usize) -> bool {
        self.lo <= idx && idx <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Axis-aligned rectangle of matrix cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub row_span: Interval,
    pub col_span: Interval,
}

impl Rect {
    pub fn new(row_span: Interval, col_span: Interval) -> Self {
        Rect { row_span, col_span }
    }

    pub fn from_bounds(row_lo: usize, row_hi: usize, col_lo: usize, col_hi: usize) -> Result<Self> {
        Ok(Rect { row_span: Interval::new(row_lo, row_hi)?, col_span: Interval::new(col_lo, col_hi)? })
    }

    pub fn cell(row: usize, col: usize) -> Self {
        Rect { row_span: Interval::single(row), col_span: Interval::single(col) }
    }

    /// Number of cells covered.
    #[inline]
    pub fn area(&self) -> u64 {
        self.row_span.len() as u64 * self.col_span.len() as u64
    }

    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        Some(Rect {
            row_span: self.row_span.intersect(&other.row_span)?,
            col_span: self.col_span.intersect(&other.col_span)?,
        })
    }

    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.row_span.hi < rows && self.col_span.hi < cols
    }

    pub(crate) fn check_within(&self, rows: usize, cols: usize) -> Result<()> {
        if self.fits(rows, cols) {
            Ok(())
        } else {
            Err(Error::OutOfBounds { rect: *self, rows, cols })
        }
    }

    /// `(row_lo, col_lo, row_hi, col_hi)`, the key used for lexicographic tie-breaks.
    pub fn lex_key(&self) -> (usize, usize, usize, usize) {
        (self.row_span.lo, self.col_span.lo, self.row_span.hi, self.col_span.hi)
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rows{} x cols{}", self.row_span, self.col_span)
    }
}

/// Intersection over union of two rects, counting inclusive cells.
pub fn iou(a: &Rect, b: &Rect) -> f64 {
    let inter = a.intersect(b).map_or(0, |r| r.area());
    let union = a.area() + b.area() - inter;
    inter as f64 / union as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rect(r0: usize, r1: usize, c0: usize, c1: usize) -> Rect {
        Rect::from_bounds(r0, r1, c0, c1).unwrap()
    }

    #[test]
    fn interval_rejects_reversed_bounds() {
        assert!(Interval::new(3, 2).is_err());
        assert_eq!(Interval::new(2, 2).unwrap().len(), 1);
    }

    #[test]
    fn iou_examples() {
        let a = rect(0, 9, 0, 9);
        assert_eq!(iou(&a, &a), 1.0);
        assert_eq!(iou(&a, &rect(10, 12, 0, 9)), 0.0);
        // two 10x10 boxes sharing a 5x10 strip
        let b = rect(5, 14, 0, 9);
        assert!((iou(&a, &b) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn fits_checks_inclusive_upper_bound() {
        let r = rect(0, 2, 0, 3);
        assert!(r.fits(3, 4));
        assert!(!r.fits(3, 3));
        assert!(matches!(r.check_within(2, 4), Err(Error::OutOfBounds { .. })));
    }

    fn arb_rect() -> impl Strategy<Value = Rect> {
        (0usize..20, 0usize..20, 0usize..20, 0usize..20)
            .prop_map(|(a, b, c, d)| rect(a.min(b), a.max(b), c.min(d), c.max(d)))
    }

    proptest! {
        #[test]
        fn iou_symmetric_and_bounded(a in arb_rect(), b in arb_rect()) {
            let ab = iou(&a, &b);
            prop_assert_eq!(ab, iou(&b, &a));
            prop_assert!((0.0..=1.0).contains(&ab));
            prop_assert_eq!(ab == 1.0, a == b);
        }
    }
}
