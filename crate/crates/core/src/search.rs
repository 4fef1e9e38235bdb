//! The alternating bounding-box morphing loop shared by the A-ESS baseline
//! and the strided sampling search.
//!
//! Each iteration aggregates the columns inside the current row span into a
//! horizontal array, runs Kadane on it for a new column span (maximum `s1`),
//! then aggregates the rows inside that new column span into a vertical array
//! and runs Kadane again for a new row span (maximum `s`). The loop continues
//! while the gain `g = s - s1` is positive and the iteration cap allows.
//! For floating weights a gain within rounding noise of zero counts as zero
//! (see [`Weight::is_gain`]).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geom::{Interval, Rect};
use crate::kadane;
use crate::probe::Probe;
use crate::scalar::Weight;

/// Source of the two 1D aggregations the loop consumes.
pub trait LineAggregator<T: Weight> {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;

    /// Writes, for every column `j`, that column's sum over `row_span` into
    /// `out[j]` (or zero where the aggregator has no data for `j`).
    fn aggregate_columns(&self, row_span: Interval, out: &mut [T]);

    /// Writes, for every row `i`, that row's sum over `col_span` into `out[i]`
    /// (or zero where the aggregator has no data for `i`).
    fn aggregate_rows(&self, col_span: Interval, out: &mut [T]);
}

/// One iteration of the morphing loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace<T = f64> {
    /// Kadane maximum of the column pass.
    pub s1: T,
    /// Kadane maximum of the row pass.
    pub s: T,
    /// `s - s1`.
    pub g: T,
    pub rect_after: Rect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// The last iteration's gain was zero, negative, or within rounding noise of zero.
    GainNonpositive,
    /// The iteration cap was reached while the gain was still positive.
    IterationCap,
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::GainNonpositive => "gain_nonpositive",
            Termination::IterationCap => "iteration_cap",
        }
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a morphing search.
///
/// `reported_sum` is the final row-pass maximum. It is the true sum of `rect`
/// only when aggregation is exact (A-ESS); under sampling it is an estimate,
/// and callers wanting the real value should evaluate `rect` directly.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult<T = f64> {
    pub rect: Rect,
    pub reported_sum: T,
    pub iterations: usize,
    pub trace: Vec<IterationTrace<T>>,
    pub termination: Termination,
}

/// Runs the loop from the full-matrix candidate box for at most `cap` iterations.
pub fn morph<T: Weight, A: LineAggregator<T>>(agg: &A, cap: usize) -> SearchResult<T> {
    morph_probed(agg, cap, &mut ())
}

/// [`morph`] reporting Kadane work to `probe`.
pub fn morph_probed<T: Weight, A: LineAggregator<T>, P: Probe>(agg: &A, cap: usize, probe: &mut P) -> SearchResult<T> {
    assert!(cap >= 1, "iteration cap must be at least 1");
    let (rows, cols) = (agg.rows(), agg.cols());
    let mut horizontal = vec![T::zero(); cols];
    let mut vertical = vec![T::zero(); rows];
    let mut row_span = Interval::full(rows);
    let mut trace = Vec::new();

    let termination = loop {
        agg.aggregate_columns(row_span, &mut horizontal);
        let col = kadane::scan(horizontal.iter().copied(), probe).expect("cols > 0");
        agg.aggregate_rows(col.interval, &mut vertical);
        let row = kadane::scan(vertical.iter().copied(), probe).expect("rows > 0");

        row_span = row.interval;
        let g = row.sum - col.sum;
        trace.push(IterationTrace { s1: col.sum, s: row.sum, g, rect_after: Rect::new(row.interval, col.interval) });

        if !T::is_gain(g, row.sum, col.sum) {
            break Termination::GainNonpositive;
        }
        if trace.len() >= cap {
            break Termination::IterationCap;
        }
    };

    let last = *trace.last().expect("at least one iteration");
    SearchResult { rect: last.rect_after, reported_sum: last.s, iterations: trace.len(), trace, termination }
}
