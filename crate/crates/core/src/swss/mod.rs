//! Slice-wise subwindow search (S-WSS).
//!
//! Prefix sums are computed only for rows and columns on a regular grid of
//! stride `f(n)`, with `n = max(rows, cols)` and offset `floor(f(n) / 2)`
//! shared by both axes. The alternating morphing loop then runs on
//! zero-padded aggregates: unsampled positions contribute zero to Kadane.
//! Preprocessing reads `O(n^2 / f(n))` entries and each iteration costs
//! `O(n)`, so with a fixed iteration cap the whole search is sublinear in the
//! matrix size.
//!
//! Sampling breaks the exact-aggregation monotonicity that makes A-ESS
//! converge: the loop can keep reporting positive gains. The iteration cap
//! bounds that case and [`SearchResult::termination`] records when it fired.

mod partial;
mod stride;

pub use partial::PartialPrefixSums;
pub use stride::{resolve_stride, StrideSpec};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::probe::Counter;
use crate::scalar::Weight;
use crate::search::{morph_probed, SearchResult};

pub const DEFAULT_ITERATION_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwssConfig {
    pub stride: StrideSpec,
    pub iteration_cap: usize,
}

impl Default for SwssConfig {
    fn default() -> Self {
        SwssConfig { stride: StrideSpec::Sqrt, iteration_cap: DEFAULT_ITERATION_CAP }
    }
}

impl SwssConfig {
    pub fn new(stride: StrideSpec, iteration_cap: usize) -> Result<Self> {
        if iteration_cap == 0 {
            return Err(Error::invalid("iteration cap must be at least 1"));
        }
        Ok(SwssConfig { stride, iteration_cap })
    }

    /// `(stride, offset)` used on a `rows x cols` input.
    pub fn sampling(&self, rows: usize, cols: usize) -> (usize, usize) {
        let stride = self.stride.resolve(rows.max(cols));
        (stride, stride / 2)
    }
}

pub fn swss_search<T: Weight>(m: &Matrix<T>, cfg: &SwssConfig) -> Result<SearchResult<T>> {
    let (stride, offset) = cfg.sampling(m.rows(), m.cols());
    swss_search_with(m, stride, offset, cfg.iteration_cap)
}

/// Search with an explicit stride and offset rather than a stride function.
pub fn swss_search_with<T: Weight>(
    m: &Matrix<T>,
    stride: usize,
    offset: usize,
    iteration_cap: usize,
) -> Result<SearchResult<T>> {
    if iteration_cap == 0 {
        return Err(Error::invalid("iteration cap must be at least 1"));
    }
    let prefix = PartialPrefixSums::build(m, stride, offset)?;
    Ok(swss_search_prepared(&prefix, iteration_cap))
}

/// Search phase only, over partial prefix sums built by the caller.
pub fn swss_search_prepared<T: Weight>(prefix: &PartialPrefixSums<T>, iteration_cap: usize) -> SearchResult<T> {
    morph_probed(prefix, iteration_cap.max(1), &mut ())
}

/// Work tallies from an instrumented search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SwssCounters {
    /// Matrix entries read while building the partial prefix sums.
    pub entries_touched: u64,
    /// Prefix-table entries held in memory.
    pub stored_entries: u64,
    /// Elements scanned by Kadane across all iterations.
    pub kadane_steps: u64,
}

/// [`swss_search`] with work and storage accounting.
pub fn swss_search_counted<T: Weight>(m: &Matrix<T>, cfg: &SwssConfig) -> Result<(SearchResult<T>, SwssCounters)> {
    if cfg.iteration_cap == 0 {
        return Err(Error::invalid("iteration cap must be at least 1"));
    }
    let (stride, offset) = cfg.sampling(m.rows(), m.cols());
    let mut touched = Counter::default();
    let prefix = PartialPrefixSums::build_probed(m, stride, offset, &mut touched)?;
    let mut steps = Counter::default();
    let result = morph_probed(&prefix, cfg.iteration_cap, &mut steps);
    let counters = SwssCounters {
        entries_touched: touched.count,
        stored_entries: prefix.stored_entries() as u64,
        kadane_steps: steps.count,
    };
    Ok((result, counters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aess::aess_search;
    use crate::exact::bentley_max_rect;
    use crate::geom::iou;
    use crate::scalar::Weight;
    use crate::search::Termination;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_stride_reproduces_aess() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let (rows, cols) = (rng.random_range(1..48), rng.random_range(1..48));
            let m = Matrix::<f64>::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0)).unwrap();
            let a = aess_search(&m, DEFAULT_ITERATION_CAP).unwrap();
            let s = swss_search(&m, &SwssConfig::new(StrideSpec::Unit, DEFAULT_ITERATION_CAP).unwrap()).unwrap();
            assert_eq!(a, s);
        }
    }

    #[test]
    fn block_found_through_sampling() {
        let m =
            Matrix::<f64>::from_fn(
                100,
                100,
                |r, c| {
                    if (20..50).contains(&r) && (20..50).contains(&c) {
                        1.0
                    } else {
                        0.0
                    }
                },
            )
            .unwrap();
        let oracle = bentley_max_rect(&m);
        let res = swss_search_with(&m, 10, 5, DEFAULT_ITERATION_CAP).unwrap();
        assert!(iou(&res.rect, &oracle.rect) >= 0.5, "{} vs {}", res.rect, oracle.rect);
    }

    #[test]
    fn cap_bounds_iterations() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut capped = 0;
        for _ in 0..200 {
            let m = Matrix::<f64>::from_fn(64, 64, |_, _| rng.random_range(-1.0..1.0)).unwrap();
            let res = swss_search(&m, &SwssConfig::default()).unwrap();
            assert!(res.iterations <= DEFAULT_ITERATION_CAP);
            for t in &res.trace {
                assert_eq!(t.g, t.s - t.s1);
            }
            match res.termination {
                Termination::IterationCap => {
                    capped += 1;
                    assert_eq!(res.iterations, DEFAULT_ITERATION_CAP);
                    assert!(res.trace.last().unwrap().g > 0.0);
                }
                Termination::GainNonpositive => {
                    let t = res.trace.last().unwrap();
                    assert!(!f64::is_gain(t.g, t.s, t.s1));
                }
            }
        }
        // small random inputs are where the cap matters
        assert!(capped > 0);
    }

    #[test]
    fn cap_of_one_stops_after_first_iteration() {
        let m = Matrix::<f64>::from_fn(30, 30, |r, c| ((r * 7 + c * 3) % 5) as f64 - 2.0).unwrap();
        let res = swss_search_with(&m, 3, 1, 1).unwrap();
        assert_eq!(res.iterations, 1);
        assert!(swss_search_with(&m, 3, 1, 0).is_err());
    }

    #[test]
    fn oversized_stride_still_returns_a_rect() {
        let m = Matrix::<f64>::from_fn(3, 200, |_, c| if c > 100 { 1.0 } else { -1.0 }).unwrap();
        let res = swss_search(&m, &SwssConfig::new(StrideSpec::Sqrt, 20).unwrap()).unwrap();
        assert!(res.rect.fits(3, 200));
        assert_eq!(res.iterations, 1);
    }

    #[test]
    fn counters_within_sublinear_bounds() {
        let m = Matrix::<f64>::from_fn(256, 256, |r, c| ((r ^ c) % 7) as f64 - 3.0).unwrap();
        for spec in [StrideSpec::Sqrt, StrideSpec::Log] {
            let cfg = SwssConfig::new(spec, 20).unwrap();
            let (res, counts) = swss_search_counted(&m, &cfg).unwrap();
            let f = spec.resolve(256) as u64;
            let bound = 2 * 256 * 256u64.div_ceil(f);
            assert!(counts.entries_touched <= bound);
            assert!(counts.stored_entries <= bound + 2 * 256u64.div_ceil(f));
            assert_eq!(counts.kadane_steps, res.iterations as u64 * 512);
            assert_eq!(res, swss_search(&m, &cfg).unwrap());
        }
    }

    #[test]
    fn default_config() {
        let cfg = SwssConfig::default();
        assert_eq!(cfg.iteration_cap, 20);
        assert_eq!(cfg.sampling(100, 60), (10, 5));
        assert_eq!(SwssConfig::new(StrideSpec::Unit, 5).unwrap().sampling(9, 9), (1, 0));
    }
}
