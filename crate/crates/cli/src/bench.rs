//! Benchmark harness: timed solves over many inputs, one record per run.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use subwindow::{coherence_score, iou, CoherenceParams, Matrix, Rect, StrideSpec};

use crate::error::{CliError, CliResult};
use crate::solve::{self, Algorithm, SolveOptions};
use crate::source::Source;

/// One timed solve. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algorithm: String,
    pub rows: usize,
    pub cols: usize,
    /// Stride function for swss, `none` otherwise.
    pub stride_spec: String,
    /// 1 for the algorithms that read every entry.
    pub resolved_stride: usize,
    /// Prefix-sum construction plus search.
    pub wall_time_ns: u64,
    pub preprocess_ns: Option<u64>,
    pub search_ns: Option<u64>,
    pub iterations: usize,
    pub termination: String,
    pub row_lo: usize,
    pub row_hi: usize,
    pub col_lo: usize,
    pub col_hi: usize,
    pub true_sum: f64,
    pub iou_vs_oracle: Option<f64>,
    pub coherence: Option<f64>,
    pub source: String,
    pub repeat: usize,
}

impl BenchRecord {
    pub fn rect(&self) -> CliResult<Rect> {
        Rect::from_bounds(self.row_lo, self.row_hi, self.col_lo, self.col_hi)
            .map_err(|e| CliError::input(format!("record rect: {e}")))
    }

    fn group(&self) -> String {
        if self.stride_spec == "none" {
            self.algorithm.clone()
        } else {
            format!("{}[{}]", self.algorithm, self.stride_spec)
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub sources: Vec<Source>,
    pub algorithms: Vec<Algorithm>,
    /// Stride sweep; only swss uses it.
    pub strides: Vec<StrideSpec>,
    pub cap: Option<usize>,
    pub repeats: usize,
    /// Untimed runs before each measured series.
    pub warmup: usize,
    pub oracle: bool,
    pub oracle_limit: usize,
    pub coherence: Option<CoherenceParams>,
    pub split_phases: bool,
}

impl BenchPlan {
    pub fn validate(&self) -> CliResult<()> {
        if self.sources.is_empty() {
            return Err(CliError::usage("bench needs at least one input (a path or --gen)"));
        }
        if self.algorithms.is_empty() {
            return Err(CliError::usage("bench needs at least one --alg"));
        }
        if self.algorithms.contains(&Algorithm::Swss) && self.strides.is_empty() {
            return Err(CliError::usage("swss needs at least one --stride"));
        }
        if self.repeats == 0 {
            return Err(CliError::usage("--repeats must be at least 1"));
        }
        for s in &self.sources {
            s.validate()?;
        }
        Ok(())
    }

    fn runs(&self) -> Vec<SolveOptions> {
        let mut runs = Vec::new();
        for &alg in &self.algorithms {
            if alg == Algorithm::Swss {
                runs.extend(self.strides.iter().map(|&stride| SolveOptions { algorithm: alg, stride, cap: self.cap }));
            } else {
                runs.push(SolveOptions { algorithm: alg, stride: StrideSpec::Unit, cap: self.cap });
            }
        }
        runs
    }
}

/// Runs the plan, handing each record to `emit` as soon as it exists.
/// Inputs are processed one at a time so no two timed solves overlap.
pub fn run_bench(plan: &BenchPlan, mut emit: impl FnMut(&BenchRecord) -> CliResult<()>) -> CliResult<Vec<BenchRecord>> {
    plan.validate()?;
    let runs = plan.runs();
    let mut all = Vec::new();
    for source in &plan.sources {
        let m = source.load()?;
        for opts in &runs {
            solve::check_size(&m, opts)?;
        }
        let oracle = if plan.oracle { Some(solve::oracle(&m, plan.oracle_limit)?.1) } else { None };
        let coherence = plan.coherence.as_ref().map(|p| coherence_score(&m, p));
        for opts in &runs {
            for _ in 0..plan.warmup {
                solve::solve(&m, opts)?;
            }
            for repeat in 0..plan.repeats {
                let o = solve::solve(&m, opts)?;
                let record = BenchRecord {
                    algorithm: o.algorithm.to_string(),
                    rows: m.rows(),
                    cols: m.cols(),
                    stride_spec: o.sampling.map_or("none".into(), |s| s.spec.to_string()),
                    resolved_stride: o.sampling.map_or(1, |s| s.stride),
                    wall_time_ns: o.wall_time_ns(),
                    preprocess_ns: plan.split_phases.then_some(o.preprocess_ns),
                    search_ns: plan.split_phases.then_some(o.search_ns),
                    iterations: o.iterations,
                    termination: o.termination.clone(),
                    row_lo: o.rect.row_span.lo,
                    row_hi: o.rect.row_span.hi,
                    col_lo: o.rect.col_span.lo,
                    col_hi: o.rect.col_span.hi,
                    true_sum: o.true_sum,
                    iou_vs_oracle: oracle.map(|r| iou(&o.rect, &r)),
                    coherence,
                    source: source.to_string(),
                    repeat,
                };
                emit(&record)?;
                all.push(record);
            }
        }
    }
    Ok(all)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordFormat {
    Jsonl,
    Csv,
}

impl std::str::FromStr for RecordFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "jsonl" => Ok(RecordFormat::Jsonl),
            "csv" => Ok(RecordFormat::Csv),
            _ => Err(format!("unknown format '{s}' (expected jsonl or csv)")),
        }
    }
}

/// Serialized, append-only record output.
pub struct RecordWriter {
    format: RecordFormat,
    out: Box<dyn Write>,
    header_pending: bool,
}

impl RecordWriter {
    /// Appends to `path`, or writes to stdout when `path` is `None`. A CSV
    /// header is written only when the target starts out empty.
    pub fn open(path: Option<&Path>, format: RecordFormat) -> CliResult<Self> {
        let (out, empty): (Box<dyn Write>, bool) = match path {
            None => (Box::new(io::stdout()), true),
            Some(p) => {
                let file = OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(p)
                    .map_err(|e| CliError::Output(format!("{}: {e}", p.display())))?;
                let empty = file.metadata().map(|m| m.len() == 0).unwrap_or(true);
                (Box::new(file), empty)
            }
        };
        Ok(RecordWriter { format, out, header_pending: empty && format == RecordFormat::Csv })
    }

    pub fn write(&mut self, record: &BenchRecord) -> CliResult<()> {
        let io_err = |e: &dyn std::fmt::Display| CliError::Output(format!("writing records: {e}"));
        let mut line = Vec::new();
        match self.format {
            RecordFormat::Jsonl => {
                serde_json::to_writer(&mut line, record).map_err(|e| io_err(&e))?;
                line.push(b'\n');
            }
            RecordFormat::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(self.header_pending).from_writer(&mut line);
                w.serialize(record).map_err(|e| io_err(&e))?;
                w.flush().map_err(|e| io_err(&e))?;
                drop(w);
                self.header_pending = false;
            }
        }
        self.out.write_all(&line).and_then(|_| self.out.flush()).map_err(|e| io_err(&e))
    }
}

/// Reads records back; `.csv` files as CSV, anything else as JSON lines.
pub fn read_records(path: &Path) -> CliResult<Vec<BenchRecord>> {
    let err = |e: &dyn std::fmt::Display| CliError::input(format!("{}: {e}", path.display()));
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        let mut reader = csv::Reader::from_path(path).map_err(|e| err(&e))?;
        reader.deserialize().collect::<Result<Vec<_>, _>>().map_err(|e| err(&e))
    } else {
        let file = fs::File::open(path).map_err(|e| err(&e))?;
        let mut records = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| err(&e))?;
            if line.trim().is_empty() {
                continue;
            }
            let record = serde_json::from_str(&line).map_err(|e| err(&format!("line {}: {e}", i + 1)))?;
            records.push(record);
        }
        Ok(records)
    }
}

/// Recomputes every record's `true_sum` from its source. Returns the number
/// of records checked and a description of each mismatch.
pub fn verify_records(records: &[BenchRecord]) -> CliResult<(usize, Vec<String>)> {
    let mut cache: Option<(String, Matrix<f64>)> = None;
    let mut problems = Vec::new();
    for (i, r) in records.iter().enumerate() {
        if cache.as_ref().is_none_or(|(s, _)| *s != r.source) {
            let m = r.source.parse::<Source>()?.load()?;
            cache = Some((r.source.clone(), m));
        }
        let m = &cache.as_ref().expect("just filled").1;
        let label = format!("record {} ({} on {})", i + 1, r.algorithm, r.source);
        if (m.rows(), m.cols()) != (r.rows, r.cols) {
            problems.push(format!("{label}: input is {}x{}, record says {}x{}", m.rows(), m.cols(), r.rows, r.cols));
            continue;
        }
        let rect = r.rect()?;
        if !rect.fits(m.rows(), m.cols()) {
            problems.push(format!("{label}: {rect} is outside the input"));
            continue;
        }
        let actual = solve::true_sum(m, &rect)?;
        if !sums_match(actual, r.true_sum) {
            problems.push(format!("{label}: true_sum {} but {rect} sums to {actual}", r.true_sum));
        }
    }
    Ok((records.len(), problems))
}

pub fn sums_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupSummary {
    /// `algorithm` or `algorithm[stride]`.
    pub group: String,
    pub inputs: usize,
    /// Median over inputs of each input's median-of-repeats wall time.
    pub median_wall_ns: f64,
    /// Median over inputs of `aess median / this group's median`.
    pub median_speedup_vs_aess: Option<f64>,
    pub accuracy_vs_oracle: Option<f64>,
    pub accuracy_vs_aess: Option<f64>,
}

pub fn summarize(records: &[BenchRecord], iou_threshold: f64) -> CliResult<Vec<GroupSummary>> {
    // group -> source -> (wall times, first repeat)
    let mut groups: BTreeMap<String, BTreeMap<&str, (Vec<f64>, &BenchRecord)>> = BTreeMap::new();
    for r in records {
        let slot = groups.entry(r.group()).or_default().entry(&r.source).or_insert((Vec::new(), r));
        slot.0.push(r.wall_time_ns as f64);
        if r.repeat < slot.1.repeat {
            slot.1 = r;
        }
    }
    let baseline: Option<BTreeMap<&str, (f64, Rect)>> = match groups.get("aess") {
        None => None,
        Some(per_source) => {
            let mut b = BTreeMap::new();
            for (src, (times, first)) in per_source {
                b.insert(*src, (median(&mut times.clone()), first.rect()?));
            }
            Some(b)
        }
    };

    let mut out = Vec::new();
    for (group, per_source) in &groups {
        let mut walls = Vec::new();
        let mut speedups = Vec::new();
        let (mut oracle_hits, mut oracle_total) = (0usize, 0usize);
        let (mut aess_hits, mut aess_total) = (0usize, 0usize);
        for (src, (times, first)) in per_source {
            let wall = median(&mut times.clone());
            walls.push(wall);
            if let Some(v) = first.iou_vs_oracle {
                oracle_total += 1;
                oracle_hits += (v >= iou_threshold) as usize;
            }
            if let Some((aess_wall, aess_rect)) = baseline.as_ref().and_then(|b| b.get(src)) {
                speedups.push(aess_wall / wall);
                aess_total += 1;
                aess_hits += (iou(&first.rect()?, aess_rect) >= iou_threshold) as usize;
            }
        }
        let frac = |hits: usize, total: usize| (total > 0).then(|| hits as f64 / total as f64);
        out.push(GroupSummary {
            group: group.clone(),
            inputs: per_source.len(),
            median_wall_ns: median(&mut walls),
            median_speedup_vs_aess: (!speedups.is_empty()).then(|| median(&mut speedups)),
            accuracy_vs_oracle: frac(oracle_hits, oracle_total),
            accuracy_vs_aess: frac(aess_hits, aess_total),
        });
    }
    Ok(out)
}

pub fn render_summary(summaries: &[GroupSummary], iou_threshold: f64) -> String {
    let mut out = String::new();
    for s in summaries {
        out.push_str(&format!("summary {}: inputs {} median_wall_ms {:.3}", s.group, s.inputs, s.median_wall_ns / 1e6));
        if let Some(x) = s.median_speedup_vs_aess {
            out.push_str(&format!(" median_speedup_vs_aess {x:.2}x"));
        }
        if let Some(a) = s.accuracy_vs_oracle {
            out.push_str(&format!(" accuracy_vs_oracle@{iou_threshold} {a:.3}"));
        }
        if let Some(a) = s.accuracy_vs_aess {
            out.push_str(&format!(" accuracy_vs_aess@{iou_threshold} {a:.3}"));
        }
        out.push('\n');
    }
    out
}
