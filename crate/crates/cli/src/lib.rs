//! The `subwindow` command-line tool: solve single inputs, benchmark solvers,
//! score coherence, generate inputs and run the golden corpus.
//!
//! Exit codes: 0 success, 1 check failures, 2 unreadable input, 64 bad flags.

pub mod bench;
pub mod error;
pub mod golden;
pub mod solve;
pub mod source;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use subwindow::datagen::{generate, GenSpec};
use subwindow::io::{self, Channel};
use subwindow::metrics::{DEFAULT_COHERENCE_RADIUS, DEFAULT_IOU_THRESHOLD};
use subwindow::{coherence_score, CoherenceParams, Matrix, StrideSpec};

use bench::{BenchPlan, RecordFormat, RecordWriter};
use error::{CliError, CliResult, EXIT_USAGE};
use solve::{Algorithm, SolveOptions};
use source::{InputFormat, Source};

#[derive(Debug, Parser)]
#[command(name = "subwindow", version, about = "Find the maximum-sum rectangle in a weight matrix")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one input and print the rectangle, its sum and the search summary.
    Solve(SolveArgs),
    /// Time solvers over many inputs and emit one record per run.
    Bench(BenchArgs),
    /// Print the spatial coherence score of an input.
    Coherence(CoherenceArgs),
    /// Write a generated matrix to a file.
    Gen(GenArgs),
    /// Recompute the true_sum of every record in a bench output file.
    Verify(VerifyArgs),
    /// Run or re-freeze the golden corpus.
    Golden {
        #[command(subcommand)]
        action: GoldenAction,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Matrix file: .csv, .pgm, .ppm, .triplets or .bin.
    #[arg(required_unless_present = "gen", conflicts_with = "gen")]
    input: Option<PathBuf>,
    /// Generate the input instead, e.g. "coherent_blobs rows=256 cols=256 seed=1".
    #[arg(long)]
    gen: Option<String>,
    /// Override the generator seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Color channel of a .ppm input (r, g or b; default r).
    #[arg(long)]
    channel: Option<Channel>,
    /// Subtract the mean from the input.
    #[arg(long)]
    normalize: bool,
    /// Replace every entry with a KxK block of copies.
    #[arg(long, default_value_t = 1, value_name = "K")]
    dup: usize,
}

impl InputArgs {
    fn source(&self) -> CliResult<Source> {
        let source = match (&self.input, &self.gen) {
            (Some(path), None) => {
                Source::File { path: path.clone(), channel: self.channel, zero_mean: self.normalize, dup: self.dup }
            }
            (None, Some(spec)) => {
                if self.channel.is_some() || self.normalize || self.dup != 1 {
                    return Err(CliError::usage("--channel, --normalize and --dup apply to file inputs only"));
                }
                Source::Gen(parse_gen(spec, self.seed)?)
            }
            _ => return Err(CliError::usage("give either an input file or --gen")),
        };
        if self.seed.is_some() && self.gen.is_none() {
            return Err(CliError::usage("--seed applies to --gen inputs only"));
        }
        source.validate()?;
        Ok(source)
    }
}

fn parse_gen(spec: &str, seed: Option<u64>) -> CliResult<GenSpec> {
    let mut g: GenSpec = spec.parse().map_err(|e| CliError::usage(format!("--gen: {e}")))?;
    if let Some(s) = seed {
        g.seed = s;
    }
    Ok(g)
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "swss")]
    alg: Algorithm,
    /// loglog, log, sqrt, logsq, const:K or unit (natural log throughout).
    #[arg(long, default_value = "sqrt")]
    stride: StrideSpec,
    /// Iteration cap (default 20 for swss, 1000 for aess).
    #[arg(long)]
    cap: Option<usize>,
    /// Print every iteration of the search.
    #[arg(long)]
    trace: bool,
    /// Also solve exactly and report the IoU against the optimum.
    #[arg(long)]
    oracle: bool,
    /// Largest side an oracle solve is allowed on.
    #[arg(long, default_value_t = 4096)]
    oracle_limit: usize,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Matrix files to benchmark.
    inputs: Vec<PathBuf>,
    /// Generator spec; combined with --count for a seed range.
    #[arg(long)]
    gen: Option<String>,
    /// Number of generated inputs, seeds seed..seed+count.
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// First generator seed (overrides the spec's).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    channel: Option<Channel>,
    #[arg(long)]
    normalize: bool,
    #[arg(long, default_value_t = 1, value_name = "K")]
    dup: usize,
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', default_value = "aess,swss")]
    alg: Vec<Algorithm>,
    /// Comma-separated stride functions swept for swss.
    #[arg(long, value_delimiter = ',', default_value = "sqrt")]
    stride: Vec<StrideSpec>,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    /// Untimed runs before each measured series.
    #[arg(long, default_value_t = 1)]
    warmup: usize,
    /// Score every run by IoU against the exact optimum.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 4096)]
    oracle_limit: usize,
    #[arg(long, default_value_t = DEFAULT_IOU_THRESHOLD)]
    iou_threshold: f64,
    /// Record the coherence score of each input.
    #[arg(long)]
    coherence: bool,
    #[arg(long, default_value_t = DEFAULT_COHERENCE_RADIUS)]
    radius: usize,
    /// Record preprocessing and search times separately.
    #[arg(long)]
    split_phases: bool,
    /// Append records here instead of printing them.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "jsonl")]
    format: RecordFormat,
}

#[derive(Debug, Args)]
struct CoherenceArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = DEFAULT_COHERENCE_RADIUS)]
    radius: usize,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// uniform_random, coherent_blobs or checkerboard.
    #[arg(long, default_value = "coherent_blobs", conflicts_with = "spec")]
    kind: String,
    #[arg(long, required_unless_present = "spec")]
    rows: Option<usize>,
    #[arg(long, required_unless_present = "spec")]
    cols: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    hi: Option<f64>,
    #[arg(long)]
    blobs: Option<usize>,
    #[arg(long)]
    scale: Option<f64>,
    #[arg(long)]
    noise: Option<f64>,
    /// Full generator spec instead of the individual flags.
    #[arg(long, conflicts_with_all = ["rows", "cols", "lo", "hi", "blobs", "scale", "noise"])]
    spec: Option<String>,
    /// Output file; the extension picks the format. .pgm and .ppm are
    /// rescaled to 0..255 (.ppm channels use seeds seed, seed+1, seed+2).
    #[arg(long)]
    out: PathBuf,
}

impl GenArgs {
    fn spec(&self) -> CliResult<GenSpec> {
        let text = match &self.spec {
            Some(s) => s.clone(),
            None => {
                let mut t = format!("{} rows={} cols={}", self.kind, self.rows.unwrap_or(0), self.cols.unwrap_or(0));
                let mut push = |k: &str, v: Option<String>| {
                    if let Some(v) = v {
                        t.push_str(&format!(" {k}={v}"));
                    }
                };
                push("lo", self.lo.map(|v| v.to_string()));
                push("hi", self.hi.map(|v| v.to_string()));
                push("blobs", self.blobs.map(|v| v.to_string()));
                push("scale", self.scale.map(|v| v.to_string()));
                push("noise", self.noise.map(|v| v.to_string()));
                t
            }
        };
        parse_gen(&text, self.seed)
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Bench output (.csv, otherwise JSON lines).
    records: PathBuf,
}

#[derive(Debug, Subcommand)]
enum GoldenAction {
    /// Solve every case and compare with the frozen values.
    Run {
        #[arg(default_value = "corpus/golden.toml")]
        manifest: PathBuf,
    },
    /// Recompute expected values with each case's reference solver.
    Freeze {
        #[arg(default_value = "corpus/golden.toml")]
        manifest: PathBuf,
    },
}

fn check_threshold(t: f64) -> CliResult<()> {
    if t > 0.0 && t <= 1.0 {
        Ok(())
    } else {
        Err(CliError::usage(format!("--iou-threshold {t} must lie in (0, 1]")))
    }
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> CliResult<()> {
    let source = args.input.source()?;
    let opts = SolveOptions { algorithm: args.alg, stride: args.stride, cap: args.cap };
    if opts.cap == Some(0) {
        return Err(CliError::usage("--cap must be at least 1"));
    }
    let m = source.load()?;
    let outcome = solve::solve(&m, &opts)?;
    let oracle = if args.oracle { Some(solve::oracle(&m, args.oracle_limit)?) } else { None };
    write_out(out, &solve::render(&outcome, args.trace, oracle))
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> CliResult<()> {
    check_threshold(args.iou_threshold)?;
    let coherence = if args.coherence {
        Some(CoherenceParams::new(args.radius).map_err(|e| CliError::usage(e.to_string()))?)
    } else {
        None
    };
    let mut sources: Vec<Source> = args
        .inputs
        .iter()
        .map(|p| Source::File { path: p.clone(), channel: args.channel, zero_mean: args.normalize, dup: args.dup })
        .collect();
    if let Some(spec) = &args.gen {
        let base = parse_gen(spec, args.seed)?;
        sources.extend((0..args.count).map(|i| Source::Gen(GenSpec { seed: base.seed + i, ..base })));
    } else if args.seed.is_some() {
        return Err(CliError::usage("--seed applies to --gen inputs only"));
    }
    let plan = BenchPlan {
        sources,
        algorithms: args.alg.clone(),
        strides: args.stride.clone(),
        cap: args.cap,
        repeats: args.repeats,
        warmup: args.warmup,
        oracle: args.oracle,
        oracle_limit: args.oracle_limit,
        coherence,
        split_phases: args.split_phases,
    };
    plan.validate()?;
    if args.cap == Some(0) {
        return Err(CliError::usage("--cap must be at least 1"));
    }
    let mut writer = RecordWriter::open(args.out.as_deref(), args.format)?;
    let records = bench::run_bench(&plan, |r| writer.write(r))?;
    let summary = bench::render_summary(&bench::summarize(&records, args.iou_threshold)?, args.iou_threshold);
    if args.out.is_some() {
        write_out(out, &summary)
    } else {
        // keep stdout a clean record stream
        eprint!("{summary}");
        Ok(())
    }
}

fn cmd_coherence(args: &CoherenceArgs, out: &mut dyn Write) -> CliResult<()> {
    let params = CoherenceParams::new(args.radius).map_err(|e| CliError::usage(e.to_string()))?;
    let m = args.input.source()?.load()?;
    write_out(out, &format!("{}\n", coherence_score(&m, &params)))
}

/// Linear rescale to 0..=255; a constant matrix maps to 0.
fn quantize(m: &Matrix<f64>) -> Vec<u8> {
    let (lo, hi) = (m.min_value(), m.max_value());
    let span = hi - lo;
    m.as_slice().iter().map(|&v| if span > 0.0 { ((v - lo) / span * 255.0).round() as u8 } else { 0 }).collect()
}

fn write_netpbm(path: &Path, channels: &[Matrix<f64>]) -> CliResult<()> {
    let (rows, cols) = (channels[0].rows(), channels[0].cols());
    let magic = if channels.len() == 1 { "P5" } else { "P6" };
    let mut bytes = format!("{magic}\n{cols} {rows}\n255\n").into_bytes();
    let planes: Vec<Vec<u8>> = channels.iter().map(quantize).collect();
    for i in 0..rows * cols {
        bytes.extend(planes.iter().map(|p| p[i]));
    }
    fs::write(path, bytes).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> CliResult<()> {
    let spec = args.spec()?;
    let make = |seed: u64| generate(&GenSpec { seed, ..spec }).map_err(|e| CliError::usage(e.to_string()));
    let m = make(spec.seed)?;
    let path = &args.out;
    let write_err = |e: subwindow::Error| CliError::Output(format!("{}: {e}", path.display()));
    match InputFormat::from_path(path)? {
        InputFormat::Csv => io::write_matrix_csv(&m, path).map_err(write_err)?,
        InputFormat::Raw => io::write_matrix_raw(&m, path).map_err(write_err)?,
        InputFormat::Triplets => io::write_sparse_triplets(&m, path).map_err(write_err)?,
        InputFormat::Pgm => write_netpbm(path, &[m])?,
        InputFormat::Ppm => {
            let g = make(spec.seed.wrapping_add(1))?;
            let b = make(spec.seed.wrapping_add(2))?;
            write_netpbm(path, &[m, g, b])?
        }
    }
    write_out(out, &format!("wrote {} ({spec})\n", path.display()))
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let records = bench::read_records(&args.records)?;
    let (n, problems) = bench::verify_records(&records)?;
    if problems.is_empty() {
        write_out(out, &format!("verified {n} records: every true_sum matches its rect\n"))
    } else {
        Err(CliError::Mismatch(format!("{} of {n} records failed:\n{}", problems.len(), problems.join("\n"))))
    }
}

fn cmd_golden(action: &GoldenAction, out: &mut dyn Write) -> CliResult<()> {
    match action {
        GoldenAction::Freeze { manifest } => {
            let m = golden::freeze(manifest)?;
            write_out(out, &format!("froze {} cases in {}\n", m.cases.len(), manifest.display()))
        }
        GoldenAction::Run { manifest } => {
            let report = golden::run_suite(manifest)?;
            let mut text = String::new();
            for r in &report.results {
                match &r.failure {
                    None => text.push_str(&format!("PASS {}\n", r.name)),
                    Some(why) => text.push_str(&format!("FAIL {}: {why}\n", r.name)),
                }
            }
            let failed = report.failures().count();
            text.push_str(&format!(
                "{} cases, {failed} failed, {:.2}s\n",
                report.results.len(),
                report.elapsed.as_secs_f64()
            ));
            write_out(out, &text)?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Mismatch(format!("golden suite: {failed} failing case(s)")))
            }
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Output(e.to_string()))
}

/// Parses `args` (including the program name) and runs the command, writing
/// normal output to `out` and diagnostics to stderr. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Coherence(a) => cmd_coherence(a, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Golden { action } => cmd_golden(action, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
