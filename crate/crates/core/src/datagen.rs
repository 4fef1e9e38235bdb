//! Seeded synthetic inputs and input transforms.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)` (rand_chacha
//! 0.9) in a fixed order, so a spec reproduces bit-identical matrices on any
//! platform. Changing the draw order is a breaking change for stored seeds.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{Interval, Rect};
use crate::matrix::Matrix;
use crate::scalar::{FloatWeight, Weight};

pub const DEFAULT_NUM_BLOBS: usize = 2;
pub const DEFAULT_BLOB_SCALE: f64 = 0.1;
pub const DEFAULT_NOISE_LEVEL: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenKind {
    /// I.i.d. uniform entries over `[lo, hi)`.
    UniformRandom,
    /// Gaussian bumps over a background of `lo`, plus uniform noise of
    /// amplitude `noise_level * (hi - lo)`.
    ///
    /// The first bump peaks at `hi`; the others are weaker clutter peaking at
    /// a random 35-75% of the span. Each bump's width is
    /// `blob_scale * min(rows, cols)` scaled by a random factor in
    /// `[0.75, 1.25)`. Overlapping bumps take the pointwise maximum.
    CoherentBlobs { num_blobs: usize, blob_scale: f64, noise_level: f64 },
    /// `hi` where `row + col` is even, `lo` elsewhere.
    Checkerboard,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub rows: usize,
    pub cols: usize,
    pub seed: u64,
    pub kind: GenKind,
    pub value_range: (f64, f64),
}

impl GenSpec {
    pub fn uniform(rows: usize, cols: usize, seed: u64) -> Self {
        GenSpec { rows, cols, seed, kind: GenKind::UniformRandom, value_range: (-1.0, 1.0) }
    }

    /// Blob matrix with the default layout parameters
    /// ([`DEFAULT_NUM_BLOBS`], [`DEFAULT_BLOB_SCALE`], [`DEFAULT_NOISE_LEVEL`]).
    pub fn coherent(rows: usize, cols: usize, seed: u64) -> Self {
        Self::blobs(rows, cols, seed, DEFAULT_NUM_BLOBS, DEFAULT_BLOB_SCALE, DEFAULT_NOISE_LEVEL)
    }

    /// Blob matrix with background `-0.25` and peaks at `1.0`.
    pub fn blobs(rows: usize, cols: usize, seed: u64, num_blobs: usize, blob_scale: f64, noise_level: f64) -> Self {
        GenSpec {
            rows,
            cols,
            seed,
            kind: GenKind::CoherentBlobs { num_blobs, blob_scale, noise_level },
            value_range: (-0.25, 1.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::EmptyMatrix { rows: self.rows, cols: self.cols });
        }
        let (lo, hi) = self.value_range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::invalid(format!("value range ({lo}, {hi}) must be finite with lo < hi")));
        }
        if let GenKind::CoherentBlobs { blob_scale, noise_level, .. } = self.kind {
            if !(blob_scale.is_finite() && blob_scale > 0.0) {
                return Err(Error::invalid(format!("blob scale {blob_scale} must be positive")));
            }
            if !(noise_level.is_finite() && noise_level >= 0.0) {
                return Err(Error::invalid(format!("noise level {noise_level} must be non-negative")));
            }
        }
        Ok(())
    }
}

/// One Gaussian bump of a [`GenKind::CoherentBlobs`] matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Blob {
    pub center_row: f64,
    pub center_col: f64,
    pub sigma: f64,
    /// Peak height as a fraction of `hi - lo`.
    pub amplitude: f64,
}

impl Blob {
    /// Bounding box of the cells where this bump alone lifts the noise-free
    /// field above zero, clipped to the matrix. `None` if no cell qualifies.
    pub fn support(&self, spec: &GenSpec) -> Option<Rect> {
        let (lo, hi) = spec.value_range;
        let reach = if lo >= 0.0 {
            f64::INFINITY
        } else {
            // lo + (hi - lo) * a * exp(-d^2 / 2 s^2) > 0
            let peak = (hi - lo) * self.amplitude;
            if peak <= -lo {
                return None;
            }
            self.sigma * (2.0 * (peak / -lo).ln()).sqrt()
        };
        let axis = |center: f64, len: usize| -> Option<Interval> {
            let a = (center - reach).ceil().max(0.0);
            let b = (center + reach).floor().min(len as f64 - 1.0);
            (a <= b).then_some(Interval { lo: a as usize, hi: b as usize })
        };
        Some(Rect::new(axis(self.center_row, spec.rows)?, axis(self.center_col, spec.cols)?))
    }
}

pub fn generate(spec: &GenSpec) -> Result<Matrix<f64>> {
    generate_with_blobs(spec).map(|(m, _)| m)
}

/// Generates the matrix together with the bump layout (empty unless the kind
/// is [`GenKind::CoherentBlobs`]).
pub fn generate_with_blobs(spec: &GenSpec) -> Result<(Matrix<f64>, Vec<Blob>)> {
    spec.validate()?;
    let (rows, cols) = (spec.rows, spec.cols);
    let (lo, hi) = spec.value_range;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        GenKind::UniformRandom => {
            let data = (0..rows * cols).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect();
            Ok((Matrix::new(rows, cols, data)?, Vec::new()))
        }
        GenKind::Checkerboard => {
            let m = Matrix::from_fn(rows, cols, |r, c| if (r + c) % 2 == 0 { hi } else { lo })?;
            Ok((m, Vec::new()))
        }
        GenKind::CoherentBlobs { num_blobs, blob_scale, noise_level } => {
            let base_sigma = (blob_scale * rows.min(cols) as f64).max(0.5);
            let blobs: Vec<Blob> = (0..num_blobs)
                .map(|i| {
                    let center_row = rng.random::<f64>() * rows as f64;
                    let center_col = rng.random::<f64>() * cols as f64;
                    let sigma = base_sigma * (0.75 + 0.5 * rng.random::<f64>());
                    let clutter = 0.35 + 0.4 * rng.random::<f64>();
                    Blob { center_row, center_col, sigma, amplitude: if i == 0 { 1.0 } else { clutter } }
                })
                .collect();

            let mut field = vec![0.0f64; rows * cols];
            for b in &blobs {
                let reach = 4.0 * b.sigma;
                let r0 = (b.center_row - reach).floor().max(0.0) as usize;
                let r1 = ((b.center_row + reach).ceil().max(0.0) as usize).min(rows - 1);
                let c0 = (b.center_col - reach).floor().max(0.0) as usize;
                let c1 = ((b.center_col + reach).ceil().max(0.0) as usize).min(cols - 1);
                let denom = 2.0 * b.sigma * b.sigma;
                for r in r0..=r1 {
                    let dr = r as f64 - b.center_row;
                    for c in c0..=c1 {
                        let dc = c as f64 - b.center_col;
                        let v = b.amplitude * (-(dr * dr + dc * dc) / denom).exp();
                        let cell = &mut field[r * cols + c];
                        if v > *cell {
                            *cell = v;
                        }
                    }
                }
            }

            let span = hi - lo;
            let noise = noise_level * span;
            let data = field.into_iter().map(|f| lo + span * f + noise * (rng.random::<f64>() - 0.5)).collect();
            Ok((Matrix::new(rows, cols, data)?, blobs))
        }
    }
}

/// Replaces every entry with a `k x k` block of copies.
pub fn duplicate_scale<T: Weight>(m: &Matrix<T>, k: usize) -> Result<Matrix<T>> {
    if k == 0 {
        return Err(Error::invalid("duplication factor must be at least 1"));
    }
    Matrix::from_fn(m.rows() * k, m.cols() * k, |r, c| m.get(r / k, c / k))
}

/// Subtracts the mean from every entry.
///
/// The mean of the shifted data is measured and removed a second time, which
/// cancels most of the rounding left by the first pass.
pub fn normalize_zero_mean<T: FloatWeight>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let n = T::from_usize(m.len()).expect("length representable");
    let first = m.total() / n;
    let shifted: Vec<T> = m.as_slice().iter().map(|&v| v - first).collect();
    let second = shifted.iter().copied().sum::<T>() / n;
    Matrix::new(m.rows(), m.cols(), shifted.into_iter().map(|v| v - second).collect())
}

/// Mean over the in-bounds `(2 radius + 1)^2` window around each entry.
pub fn box_blur<T: FloatWeight>(m: &Matrix<T>, radius: usize) -> Result<Matrix<T>> {
    let (rows, cols) = (m.rows(), m.cols());
    let window = |i: usize, len: usize| (i.saturating_sub(radius), (i + radius).min(len - 1));
    let mut across = Vec::with_capacity(m.len());
    for r in 0..rows {
        let row = m.row(r);
        for c in 0..cols {
            let (a, b) = window(c, cols);
            let s: T = row[a..=b].iter().copied().sum();
            across.push(s / T::from_usize(b - a + 1).unwrap());
        }
    }
    Matrix::from_fn(rows, cols, |r, c| {
        let (a, b) = window(r, rows);
        let s: T = (a..=b).map(|rr| across[rr * cols + c]).sum();
        s / T::from_usize(b - a + 1).unwrap()
    })
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            GenKind::UniformRandom => "uniform_random",
            GenKind::CoherentBlobs { .. } => "coherent_blobs",
            GenKind::Checkerboard => "checkerboard",
        };
        write!(
            f,
            "{kind} rows={} cols={} seed={} lo={:?} hi={:?}",
            self.rows, self.cols, self.seed, self.value_range.0, self.value_range.1
        )?;
        if let GenKind::CoherentBlobs { num_blobs, blob_scale, noise_level } = self.kind {
            write!(f, " blobs={num_blobs} scale={blob_scale:?} noise={noise_level:?}")?;
        }
        Ok(())
    }
}

impl FromStr for GenSpec {
    type Err = Error;

    /// Parses the `Display` form: a kind followed by `key=value` pairs.
    /// Omitted keys take the defaults of [`GenSpec::uniform`] and
    /// [`GenSpec::coherent`].
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let kind_name = parts.next().ok_or_else(|| Error::invalid("empty generator spec"))?;
        let mut spec = GenSpec::uniform(1, 1, 0);
        let (mut blobs, mut scale, mut noise) = (DEFAULT_NUM_BLOBS, DEFAULT_BLOB_SCALE, DEFAULT_NOISE_LEVEL);
        let mut range_given = false;
        for part in parts {
            let (key, value) =
                part.split_once('=').ok_or_else(|| Error::invalid(format!("expected key=value, got '{part}'")))?;
            let bad = || Error::invalid(format!("bad value for {key}: '{value}'"));
            match key {
                "rows" => spec.rows = value.parse().map_err(|_| bad())?,
                "cols" => spec.cols = value.parse().map_err(|_| bad())?,
                "seed" => spec.seed = value.parse().map_err(|_| bad())?,
                "lo" => {
                    spec.value_range.0 = value.parse().map_err(|_| bad())?;
                    range_given = true;
                }
                "hi" => {
                    spec.value_range.1 = value.parse().map_err(|_| bad())?;
                    range_given = true;
                }
                "blobs" => blobs = value.parse().map_err(|_| bad())?,
                "scale" => scale = value.parse().map_err(|_| bad())?,
                "noise" => noise = value.parse().map_err(|_| bad())?,
                _ => return Err(Error::invalid(format!("unknown generator key '{key}'"))),
            }
        }
        spec.kind = match kind_name {
            "uniform_random" => GenKind::UniformRandom,
            "checkerboard" => GenKind::Checkerboard,
            "coherent_blobs" => {
                if !range_given {
                    spec.value_range = (-0.25, 1.0);
                }
                GenKind::CoherentBlobs { num_blobs: blobs, blob_scale: scale, noise_level: noise }
            }
            other => return Err(Error::invalid(format!("unknown generator kind '{other}'"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}
