use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use subwindow::aess::aess_search_prepared;
use subwindow::swss::swss_search_prepared;
use subwindow::{
    bentley_max_rect, brute_force_max_rect, iou, FullPrefixSums, IterationTrace, Matrix, PartialPrefixSums, Rect,
    StrideSpec, SwssConfig, DEFAULT_ITERATION_CAP, DEFAULT_SAFETY_CAP,
};

use crate::error::{CliError, CliResult};

/// Largest dimension the exhaustive solver accepts.
pub const BRUTE_FORCE_LIMIT: usize = 48;
/// Oracle solves switch from brute force to Bentley above this dimension.
pub const BRUTE_ORACLE_MAX: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Brute,
    Bentley,
    Aess,
    Swss,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Brute => "brute",
            Algorithm::Bentley => "bentley",
            Algorithm::Aess => "aess",
            Algorithm::Swss => "swss",
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Algorithm::Brute | Algorithm::Bentley)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "brute" => Ok(Algorithm::Brute),
            "bentley" => Ok(Algorithm::Bentley),
            "aess" => Ok(Algorithm::Aess),
            "swss" => Ok(Algorithm::Swss),
            _ => Err(format!("unknown algorithm '{s}' (expected brute, bentley, aess or swss)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub stride: StrideSpec,
    /// Iteration cap; `None` means 20 for swss and the safety cap for aess.
    pub cap: Option<usize>,
}

impl SolveOptions {
    pub fn new(algorithm: Algorithm) -> Self {
        SolveOptions { algorithm, stride: StrideSpec::Sqrt, cap: None }
    }

    pub fn effective_cap(&self) -> usize {
        match (self.cap, self.algorithm) {
            (Some(c), _) => c,
            (None, Algorithm::Aess) => DEFAULT_SAFETY_CAP,
            (None, _) => DEFAULT_ITERATION_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub spec: StrideSpec,
    pub stride: usize,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub algorithm: Algorithm,
    pub rect: Rect,
    /// Sum of `rect` recomputed from full prefix sums.
    pub true_sum: f64,
    /// What the algorithm itself reported; an estimate for swss.
    pub reported_sum: f64,
    /// Zero for the exact solvers.
    pub iterations: usize,
    pub termination: String,
    pub sampling: Option<Sampling>,
    pub trace: Vec<IterationTrace<f64>>,
    pub preprocess_ns: u64,
    pub search_ns: u64,
}

impl Outcome {
    pub fn wall_time_ns(&self) -> u64 {
        (self.preprocess_ns + self.search_ns).max(1)
    }
}

fn elapsed_ns(t: Instant) -> u64 {
    t.elapsed().as_nanos().min(u64::MAX as u128) as u64
}

pub fn check_size(m: &Matrix<f64>, opts: &SolveOptions) -> CliResult<()> {
    if opts.algorithm == Algorithm::Brute && m.max_dim() > BRUTE_FORCE_LIMIT {
        return Err(CliError::usage(format!(
            "brute force refused on a {}x{} input (limit {BRUTE_FORCE_LIMIT} per side); use bentley",
            m.rows(),
            m.cols()
        )));
    }
    if opts.cap == Some(0) {
        return Err(CliError::usage("--cap must be at least 1"));
    }
    Ok(())
}

/// Runs one solver. Timing covers prefix-sum construction and the search.
pub fn solve(m: &Matrix<f64>, opts: &SolveOptions) -> CliResult<Outcome> {
    check_size(m, opts)?;
    let cap = opts.effective_cap();
    let (rect, reported, iterations, termination, sampling, trace, pre, search) = match opts.algorithm {
        Algorithm::Brute | Algorithm::Bentley => {
            let t = Instant::now();
            let r = if opts.algorithm == Algorithm::Brute { brute_force_max_rect(m) } else { bentley_max_rect(m) };
            (r.rect, r.sum, 0, "exact".to_string(), None, Vec::new(), 0, elapsed_ns(t))
        }
        Algorithm::Aess => {
            let t = Instant::now();
            let prefix = FullPrefixSums::build(m);
            let pre = elapsed_ns(t);
            let t = Instant::now();
            let r = aess_search_prepared(&prefix, cap);
            let search = elapsed_ns(t);
            (r.rect, r.reported_sum, r.iterations, r.termination.to_string(), None, r.trace, pre, search)
        }
        Algorithm::Swss => {
            let cfg = SwssConfig::new(opts.stride, cap).map_err(|e| CliError::usage(e.to_string()))?;
            let (stride, offset) = cfg.sampling(m.rows(), m.cols());
            let t = Instant::now();
            let prefix = PartialPrefixSums::build(m, stride, offset).map_err(|e| CliError::usage(e.to_string()))?;
            let pre = elapsed_ns(t);
            let t = Instant::now();
            let r = swss_search_prepared(&prefix, cap);
            let search = elapsed_ns(t);
            let sampling = Some(Sampling { spec: opts.stride, stride, offset });
            (r.rect, r.reported_sum, r.iterations, r.termination.to_string(), sampling, r.trace, pre, search)
        }
    };
    let true_sum = true_sum(m, &rect)?;
    Ok(Outcome {
        algorithm: opts.algorithm,
        rect,
        true_sum,
        reported_sum: reported,
        iterations,
        termination,
        sampling,
        trace,
        preprocess_ns: pre,
        search_ns: search,
    })
}

pub fn true_sum(m: &Matrix<f64>, rect: &Rect) -> CliResult<f64> {
    FullPrefixSums::build(m).rect_sum(rect).map_err(|e| CliError::input(e.to_string()))
}

/// Exact optimum used for IoU scoring: brute force on tiny inputs, Bentley
/// otherwise. Refused above `limit` per side.
pub fn oracle(m: &Matrix<f64>, limit: usize) -> CliResult<(Algorithm, Rect, f64)> {
    if m.max_dim() > limit {
        return Err(CliError::usage(format!(
            "oracle refused on a {}x{} input (--oracle-limit is {limit})",
            m.rows(),
            m.cols()
        )));
    }
    if m.max_dim() <= BRUTE_ORACLE_MAX {
        let r = brute_force_max_rect(m);
        Ok((Algorithm::Brute, r.rect, r.sum))
    } else {
        let r = bentley_max_rect(m);
        Ok((Algorithm::Bentley, r.rect, r.sum))
    }
}

/// Plain-text report printed by `solve`.
pub fn render(outcome: &Outcome, show_trace: bool, oracle: Option<(Algorithm, Rect, f64)>) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k:<13}{v}\n"));
    line("algorithm", outcome.algorithm.to_string());
    if let Some(s) = outcome.sampling {
        let base = match s.spec {
            StrideSpec::LogLog | StrideSpec::Log | StrideSpec::LogSquared => " (natural log)",
            _ => "",
        };
        line("stride", format!("{} -> {}{base}, offset {}", s.spec, s.stride, s.offset));
    }
    line("rect", outcome.rect.to_string());
    line("sum", format!("{}", outcome.true_sum));
    if !outcome.algorithm.is_exact() {
        line("reported", format!("{}", outcome.reported_sum));
    }
    line("iterations", outcome.iterations.to_string());
    line("termination", outcome.termination.clone());
    if let Some((alg, rect, sum)) = oracle {
        line("oracle", format!("{alg} {rect} sum {sum}"));
        line("iou", format!("{:.6}", iou(&outcome.rect, &rect)));
    }
    if show_trace {
        for (i, t) in outcome.trace.iter().enumerate() {
            out.push_str(&format!("  iter {:>3}  s1 {}  s {}  g {}  {}\n", i + 1, t.s1, t.s, t.g, t.rect_after));
        }
    }
    out
}
