//! Frozen expected outputs for the shipped corpus.
//!
//! Each case names an input file, solver flags and the in-repo oracle that
//! produced its expected values. `freeze` fills in the expectations by
//! running that oracle; `run` re-solves every case and compares.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use subwindow::io::Channel;
use subwindow::{bentley_max_rect, iou, Rect, StrideSpec};

use crate::bench::sums_match;
use crate::error::{CliError, CliResult};
use crate::solve::{self, Algorithm, Outcome, SolveOptions};
use crate::source::Source;

const HEADER: &str = "\
# Golden cases for `subwindow golden run`.
# Expected values are written by `subwindow golden freeze` (see
# corpus/regenerate.sh); do not edit them by hand.
";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    #[serde(rename = "case", default)]
    pub cases: Vec<GoldenCase>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldenCase {
    pub name: String,
    /// Relative to the manifest's directory.
    pub input: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub channel: Option<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub zero_mean: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dup: Option<usize>,
    pub algorithm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stride: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    /// Solver whose output is frozen: `brute`, `bentley`, `aess`, or `self`
    /// for the case's own algorithm.
    pub reference: String,
    /// How the expectation was obtained, in words.
    pub derivation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_rect: Option<[usize; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_sum: Option<f64>,
    /// IoU against the Bentley optimum at freeze time (approximate solvers only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_iou: Option<f64>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl GoldenCase {
    fn source(&self, base: &Path) -> CliResult<Source> {
        let channel = match &self.channel {
            None => None,
            Some(c) => Some(c.parse::<Channel>().map_err(|e| self.bad(e))?),
        };
        Ok(Source::File {
            path: base.join(&self.input),
            channel,
            zero_mean: self.zero_mean,
            dup: self.dup.unwrap_or(1),
        })
    }

    fn options(&self) -> CliResult<SolveOptions> {
        let algorithm: Algorithm = self.algorithm.parse().map_err(|e| self.bad(e))?;
        let stride = match &self.stride {
            None => StrideSpec::Sqrt,
            Some(s) => s.parse().map_err(|e| self.bad(e))?,
        };
        Ok(SolveOptions { algorithm, stride, cap: self.cap })
    }

    fn bad(&self, e: impl std::fmt::Display) -> CliError {
        CliError::usage(format!("golden case '{}': {e}", self.name))
    }
}

fn rect_array(r: &Rect) -> [usize; 4] {
    [r.row_span.lo, r.row_span.hi, r.col_span.lo, r.col_span.hi]
}

pub fn load_manifest(path: &Path) -> CliResult<Manifest> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// Computes and writes every case's expected values. Fails without writing
/// if a case's algorithm disagrees with its reference solver.
pub fn freeze(path: &Path) -> CliResult<Manifest> {
    let mut manifest = load_manifest(path)?;
    let base = base_dir(path);
    for case in &mut manifest.cases {
        let m = case.source(&base)?.load()?;
        let opts = case.options()?;
        let got = solve::solve(&m, &opts)?;
        let expected: Outcome = if case.reference == "self" {
            got.clone()
        } else {
            let alg: Algorithm = case.reference.parse().map_err(|e| case.bad(e))?;
            let reference = solve::solve(&m, &SolveOptions::new(alg))?;
            // exact solvers may legitimately tie on different rects
            let agrees = if opts.algorithm.is_exact() && alg.is_exact() {
                sums_match(got.true_sum, reference.true_sum)
            } else {
                got.rect == reference.rect && sums_match(got.true_sum, reference.true_sum)
            };
            if !agrees {
                return Err(CliError::Mismatch(format!(
                    "golden case '{}': {} gives {} (sum {}) but reference {} gives {} (sum {})",
                    case.name, opts.algorithm, got.rect, got.true_sum, alg, reference.rect, reference.true_sum
                )));
            }
            reference
        };
        case.expected_rect = Some(rect_array(&expected.rect));
        case.expected_sum = Some(expected.true_sum);
        case.oracle_iou = (!opts.algorithm.is_exact()).then(|| iou(&got.rect, &bentley_max_rect(&m).rect));
    }
    let body = toml::to_string(&manifest).map_err(|e| CliError::Output(e.to_string()))?;
    fs::write(path, format!("{HEADER}\n{body}")).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
    Ok(manifest)
}

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub name: String,
    /// `None` on success.
    pub failure: Option<String>,
}

#[derive(Debug, Clone)]
pub struct GoldenReport {
    pub results: Vec<CaseResult>,
    pub elapsed: Duration,
}

impl GoldenReport {
    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.results.iter().filter(|r| r.failure.is_some())
    }

    pub fn passed(&self) -> bool {
        !self.results.is_empty() && self.failures().next().is_none()
    }
}

fn check_case(case: &GoldenCase, base: &Path) -> CliResult<Option<String>> {
    let (Some(rect), Some(sum)) = (case.expected_rect, case.expected_sum) else {
        return Ok(Some("no expected values (run golden freeze)".into()));
    };
    let m = case.source(base)?.load()?;
    let got = solve::solve(&m, &case.options()?)?;
    let got_rect = rect_array(&got.rect);
    Ok(if got_rect != rect {
        Some(format!("rect {got_rect:?}, expected {rect:?}"))
    } else if (got.true_sum - sum).abs() > 1e-9 {
        Some(format!("sum {}, expected {sum}", got.true_sum))
    } else {
        None
    })
}

/// Solves every case. Errors loading a case count as that case failing.
pub fn run_suite(path: &Path) -> CliResult<GoldenReport> {
    let start = Instant::now();
    let manifest = load_manifest(path)?;
    let base = base_dir(path);
    let results = manifest
        .cases
        .iter()
        .map(|case| CaseResult {
            name: case.name.clone(),
            failure: check_case(case, &base).unwrap_or_else(|e| Some(e.to_string())),
        })
        .collect();
    Ok(GoldenReport { results, elapsed: start.elapsed() })
}
