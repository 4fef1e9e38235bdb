//! Spatial coherence and IoU-threshold accuracy.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{iou, Rect};
use crate::matrix::Matrix;
use crate::scalar::Weight;

pub const DEFAULT_COHERENCE_RADIUS: usize = 5;
pub const DEFAULT_IOU_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoherenceParams {
    radius: usize,
}

impl CoherenceParams {
    pub fn new(radius: usize) -> Result<Self> {
        if radius == 0 {
            return Err(Error::invalid("coherence radius must be at least 1"));
        }
        Ok(CoherenceParams { radius })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }
}

impl Default for CoherenceParams {
    fn default() -> Self {
        CoherenceParams { radius: DEFAULT_COHERENCE_RADIUS }
    }
}

/// Spatial coherence `C = 1 - D` of a matrix.
///
/// `D` is the mean absolute difference between every entry and each
/// neighbour within the square window `[-r, r]^2`, divided by the value
/// range `max - min`. Only in-bounds neighbours are compared, the zero
/// offset counts as a comparison (contributing nothing), and a constant
/// matrix has `D = 0`.
pub fn coherence_score<T: Weight>(m: &Matrix<T>, params: &CoherenceParams) -> f64 {
    let range = (m.max_value().as_f64() - m.min_value().as_f64()).abs();
    if range == 0.0 {
        return 1.0;
    }
    let (rows, cols) = (m.rows(), m.cols());
    let values: Vec<f64> = m.as_slice().iter().map(|v| v.as_f64()).collect();
    let r = params.radius as isize;
    let offsets: Vec<(isize, isize)> = (-r..=r).flat_map(|dy| (-r..=r).map(move |dx| (dy, dx))).collect();

    // one partial per offset, reduced in offset order for a deterministic total
    let partials: Vec<(f64, u64)> = offsets
        .par_iter()
        .map(|&(dy, dx)| {
            let Some((r0, r1)) = overlap(rows, dy) else { return (0.0, 0) };
            let Some((c0, c1)) = overlap(cols, dx) else { return (0.0, 0) };
            let mut sum = 0.0;
            for i in r0..r1 {
                let here = &values[i * cols + c0..i * cols + c1];
                let ni = (i as isize + dy) as usize;
                let nc0 = (c0 as isize + dx) as usize;
                let there = &values[ni * cols + nc0..ni * cols + nc0 + (c1 - c0)];
                sum += here.iter().zip(there).map(|(a, b)| (a - b).abs()).sum::<f64>();
            }
            (sum, ((r1 - r0) * (c1 - c0)) as u64)
        })
        .collect();

    let (total, count) = partials.iter().fold((0.0, 0u64), |(s, c), (ps, pc)| (s + ps, c + pc));
    let dissimilarity = total / (count as f64 * range);
    1.0 - dissimilarity
}

/// Index range `[lo, hi)` of positions `i` along an axis of length `len` whose
/// neighbour `i + d` is also in bounds.
fn overlap(len: usize, d: isize) -> Option<(usize, usize)> {
    let lo = (-d).max(0) as usize;
    let hi = (len as isize - d.max(0)).max(0) as usize;
    (lo < hi).then_some((lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyReport {
    pub total: usize,
    pub correct: usize,
    pub accuracy: f64,
    pub iou_threshold: f64,
}

/// Fraction of proposals whose IoU with the paired reference reaches `threshold`.
pub fn accuracy(proposals: &[Rect], references: &[Rect], threshold: f64) -> Result<AccuracyReport> {
    if proposals.len() != references.len() {
        return Err(Error::invalid(format!("{} proposals but {} references", proposals.len(), references.len())));
    }
    if proposals.is_empty() {
        return Err(Error::invalid("accuracy needs at least one proposal"));
    }
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::invalid(format!("IoU threshold {threshold} outside (0, 1]")));
    }
    let correct = proposals.iter().zip(references).filter(|(p, r)| iou(p, r) >= threshold).count();
    Ok(AccuracyReport {
        total: proposals.len(),
        correct,
        accuracy: correct as f64 / proposals.len() as f64,
        iou_threshold: threshold,
    })
}
