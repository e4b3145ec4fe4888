//! Command-line front end shared by the `tmotif` binary and its tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimate::Estimator;
use crate::exact::exact_count_parallel;
use crate::graph::{load_graph, EdgeFormat, LoadOptions, TemporalGraph, Timestamp};
use crate::motif::{parse_motif, Motif, TieMode};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Estimate,
    Exact,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchFormat {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "tmotif", version, about = "Estimate or count temporal motifs in a timestamped edge list")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate and/or exactly count one motif.
    Run(RunArgs),
    /// Repeat the estimate over several thread counts and report timings.
    Bench(BenchArgs),
    /// List the built-in motifs.
    Presets,
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    /// Edge list, one `src dst timestamp` per line.
    #[arg(long)]
    pub graph: PathBuf,
    /// `whitespace` or `csv`.
    #[arg(long, default_value = "whitespace", value_parser = parse_format)]
    pub format: EdgeFormat,
    /// Preset name (see `tmotif presets`) or path to a motif file.
    #[arg(long)]
    pub motif: String,
    /// Time window, in seconds or with a suffix s, m, h, D or W.
    #[arg(long, value_parser = parse_duration)]
    pub delta: Timestamp,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, value_enum, default_value_t = Mode::Estimate)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Include thread count and timings in the report.
    #[arg(long)]
    pub diagnostics: bool,
    /// Order equal timestamps by input position instead of rejecting them.
    #[arg(long)]
    pub lenient_ties: bool,
    /// Search-node budget of the exact counter.
    #[arg(long, default_value_t = 1_000_000_000)]
    pub cap: u64,
    #[arg(long)]
    pub allow_self_loops: bool,
}

#[derive(Clone, Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Comma-separated thread counts.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
    pub thread_list: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, value_enum, default_value_t = BenchFormat::Csv)]
    pub bench_output: BenchFormat,
}

fn parse_format(s: &str) -> std::result::Result<EdgeFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `90`, `90s`, `15m`, `2h`, `1D` or `1W` into seconds.
pub fn parse_duration(s: &str) -> std::result::Result<Timestamp, String> {
    let s = s.trim();
    let (num, unit) = match s.char_indices().last() {
        Some((i, c)) if c.is_ascii_alphabetic() => (&s[..i], c),
        _ => (s, 's'),
    };
    let scale: i64 = match unit {
        's' => 1,
        'm' => 60,
        'h' => 3600,
        'D' | 'd' => 86_400,
        'W' | 'w' => 604_800,
        other => return Err(format!("unknown duration unit `{other}`")),
    };
    let n: i64 = num.trim().parse().map_err(|_| format!("`{s}` is not a duration"))?;
    if n < 0 {
        return Err(format!("duration must be non-negative, got `{s}`"));
    }
    n.checked_mul(scale).ok_or_else(|| format!("duration `{s}` overflows"))
}

/// Fully resolved settings of one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub graph_path: PathBuf,
    pub graph_format: EdgeFormat,
    pub motif: String,
    pub delta: Timestamp,
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    pub threads: usize,
    pub output_format: OutputFormat,
    pub diagnostics: bool,
    pub lenient_ties: bool,
    pub enumeration_cap: u64,
    pub allow_self_loops: bool,
}

impl From<&RunArgs> for RunConfig {
    fn from(a: &RunArgs) -> Self {
        RunConfig {
            graph_path: a.graph.clone(),
            graph_format: a.format,
            motif: a.motif.clone(),
            delta: a.delta,
            mode: a.mode,
            samples: a.samples,
            seed: a.seed,
            threads: a.threads,
            output_format: a.output,
            diagnostics: a.diagnostics,
            lenient_ties: a.lenient_ties,
            enumeration_cap: a.cap,
            allow_self_loops: a.allow_self_loops,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.delta < 0 {
            return Err(Error::InvalidArgument(format!("delta must be non-negative, got {}", self.delta)));
        }
        if self.mode != Mode::Exact && self.samples == 0 {
            return Err(Error::InvalidArgument("--samples must be at least 1".into()));
        }
        Ok(())
    }

    fn ties(&self) -> TieMode {
        if self.lenient_ties {
            TieMode::Lenient
        } else {
            TieMode::Strict
        }
    }
}

/// Preset name or motif file.
pub fn resolve_motif(spec: &str) -> Result<(String, Motif)> {
    if let Some(m) = Motif::preset(spec) {
        return Ok((spec.to_string(), m));
    }
    if !std::path::Path::new(spec).is_file() {
        let names: Vec<&str> = Motif::preset_names().collect();
        return Err(Error::InvalidArgument(format!(
            "`{spec}` is neither a motif file nor a preset ({})",
            names.join(", ")
        )));
    }
    Ok((spec.to_string(), parse_motif(spec)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphInfo {
    pub n: usize,
    pub m: usize,
    pub time_span: Timestamp,
}

#[derive(Clone, Debug, Serialize)]
pub struct MotifInfo {
    pub name: String,
    pub num_vertices: usize,
    pub edges: Vec<(u8, u8)>,
    pub anchor_class: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub load_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preprocess_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_s: Option<f64>,
}

/// Report printed by `tmotif run`. Thread count and timings are only filled
/// in with diagnostics on, so the default output is reproducible byte for
/// byte across machines and thread counts.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub mode: Mode,
    pub graph: GraphInfo,
    pub motif: MotifInfo,
    pub delta: Timestamp,
    pub ties: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_error: Option<f64>,
    #[serde(rename = "W_delta", skip_serializing_if = "Option::is_none")]
    pub w_delta: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hits: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valid: Option<u64>,
    #[serde(rename = "sum_X", skip_serializing_if = "Option::is_none")]
    pub sum_x: Option<u128>,
    #[serde(rename = "B_max", skip_serializing_if = "Option::is_none")]
    pub b_max: Option<u128>,
    #[serde(rename = "B_avg", skip_serializing_if = "Option::is_none")]
    pub b_avg: Option<f64>,
    #[serde(rename = "B_std", skip_serializing_if = "Option::is_none")]
    pub b_std: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_support: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

fn load(cfg: &RunConfig) -> Result<(TemporalGraph, f64)> {
    let start = Instant::now();
    let opts = LoadOptions { allow_self_loops: cfg.allow_self_loops };
    let g = load_graph(&cfg.graph_path, cfg.graph_format, &opts)?;
    Ok((g, start.elapsed().as_secs_f64()))
}

/// Executes one run and builds its report.
pub fn run(cfg: &RunConfig) -> Result<RunReport> {
    cfg.validate()?;
    let (name, motif) = resolve_motif(&cfg.motif)?;
    let (g, load_s) = load(cfg)?;
    run_on(&g, &name, &motif, cfg, load_s)
}

/// [`run`] on an already loaded graph.
pub fn run_on(g: &TemporalGraph, name: &str, motif: &Motif, cfg: &RunConfig, load_s: f64) -> Result<RunReport> {
    cfg.validate()?;
    let ties = cfg.ties();
    let est = Estimator::new(g, motif, cfg.delta, ties)?;
    let mut timings = Timings { load_s, ..Default::default() };
    let mut report = RunReport {
        schema_version: SCHEMA_VERSION,
        mode: cfg.mode,
        graph: GraphInfo { n: g.num_vertices(), m: g.num_edges(), time_span: g.time_span() },
        motif: MotifInfo {
            name: name.to_string(),
            num_vertices: motif.num_vertices(),
            edges: motif.edges().to_vec(),
            anchor_class: est.extender().anchor().class.to_string(),
        },
        delta: cfg.delta,
        ties: match ties {
            TieMode::Strict => "strict",
            TieMode::Lenient => "lenient",
        },
        estimate: None,
        exact: None,
        relative_error: None,
        w_delta: None,
        k: None,
        hits: None,
        valid: None,
        sum_x: None,
        b_max: None,
        b_avg: None,
        b_std: None,
        seed: None,
        zero_support: None,
        threads: None,
        timings: None,
    };
    if cfg.mode != Mode::Exact {
        let r = est.run(cfg.samples, cfg.seed, cfg.threads)?;
        report.estimate = Some(r.estimate);
        report.w_delta = Some(r.w_delta);
        report.k = Some(r.k);
        report.hits = Some(r.hits);
        report.valid = Some(r.valid);
        report.sum_x = Some(r.sum_x);
        report.b_max = Some(r.b.max);
        report.b_avg = Some(r.b.avg);
        report.b_std = Some(r.b.std);
        report.seed = Some(r.seed);
        report.zero_support = Some(r.zero_support);
        timings.preprocess_s = Some(r.elapsed_preprocess.as_secs_f64());
        timings.sampling_s = Some(r.elapsed_sampling.as_secs_f64());
    }
    if cfg.mode != Mode::Estimate {
        let start = Instant::now();
        let c = exact_count_parallel(g, motif, cfg.delta, ties, cfg.enumeration_cap, cfg.threads)?;
        timings.exact_s = Some(start.elapsed().as_secs_f64());
        report.exact = Some(c);
    }
    if let (Some(e), Some(c)) = (report.estimate, report.exact) {
        report.relative_error = relative_error(c, e);
    }
    if cfg.diagnostics {
        report.threads = Some(if cfg.threads == 0 { rayon::current_num_threads() } else { cfg.threads });
        report.timings = Some(timings);
    }
    Ok(report)
}

/// `|C - C_hat| / C`; for `C == 0` it is 0 when the estimate is also 0 and
/// undefined otherwise.
pub fn relative_error(exact: u128, estimate: f64) -> Option<f64> {
    if exact == 0 {
        (estimate == 0.0).then_some(0.0)
    } else {
        Some((exact as f64 - estimate).abs() / exact as f64)
    }
}

pub fn render(report: &RunReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        OutputFormat::Text => {
            // flatten the JSON object into `key: value` lines
            let value = serde_json::to_value(report).expect("report serializes");
            let mut out = String::new();
            flatten("", &value, &mut out);
            out
        }
    }
}

fn flatten(prefix: &str, v: &serde_json::Value, out: &mut String) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        serde_json::Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub threads: usize,
    pub rep: usize,
    pub elapsed_s: f64,
    pub estimate: f64,
}

/// Repeats the estimate `reps` times for each thread count. The weight table
/// is built once; rows time sampling only.
pub fn bench(cfg: &RunConfig, thread_list: &[usize], reps: usize) -> Result<Vec<BenchRow>> {
    cfg.validate()?;
    if thread_list.is_empty() || reps == 0 {
        return Err(Error::InvalidArgument("bench needs at least one thread count and one repetition".into()));
    }
    let (_, motif) = resolve_motif(&cfg.motif)?;
    let (g, _) = load(cfg)?;
    let est = Estimator::new(&g, &motif, cfg.delta, cfg.ties())?;
    let mut rows = Vec::with_capacity(thread_list.len() * reps);
    for &threads in thread_list {
        for rep in 0..reps {
            let r = est.run(cfg.samples, cfg.seed, threads)?;
            rows.push(BenchRow { threads, rep, elapsed_s: r.elapsed_sampling.as_secs_f64(), estimate: r.estimate });
        }
    }
    Ok(rows)
}

/// Thread counts whose median time exceeds that of the previous count.
pub fn scaling_regressions(rows: &[BenchRow]) -> Vec<usize> {
    let mut medians: Vec<(usize, f64)> = Vec::new();
    for r in rows {
        if medians.last().map(|m| m.0) != Some(r.threads) {
            let mut t: Vec<f64> = rows.iter().filter(|x| x.threads == r.threads).map(|x| x.elapsed_s).collect();
            t.sort_by(f64::total_cmp);
            medians.push((r.threads, t[t.len() / 2]));
        }
    }
    medians.windows(2).filter(|w| w[1].1 > w[0].1).map(|w| w[1].0).collect()
}

pub fn render_bench(rows: &[BenchRow], format: BenchFormat) -> String {
    match format {
        BenchFormat::Json => serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
        BenchFormat::Csv => {
            let mut out = String::from("threads,rep,elapsed_s,estimate\n");
            for r in rows {
                out.push_str(&format!("{},{},{:.6},{}\n", r.threads, r.rep, r.elapsed_s, r.estimate));
            }
            out
        }
    }
}

/// Process exit code for an error: 1 usage, 2 input/output, 3 cap.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } | Error::Parse { .. } | Error::NegativeTimestamp { .. } | Error::SelfLoop { .. } | Error::EmptyGraph => 2,
        Error::CapExceeded { .. } => 3,
        Error::InvalidMotif(_) | Error::NoAnchor { .. } | Error::InvalidArgument(_) => 1,
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Presets => {
            for name in Motif::preset_names() {
                let m = Motif::preset(name).expect("listed preset exists");
                let _ = writeln!(stdout, "{name}\t{m}");
            }
            Ok(())
        }
        Command::Run(args) => {
            let cfg = RunConfig::from(args);
            run(&cfg).map(|r| {
                let _ = stdout.write_all(render(&r, cfg.output_format).as_bytes());
            })
        }
        Command::Bench(b) => {
            let cfg = RunConfig::from(&b.run);
            bench(&cfg, &b.thread_list, b.reps).map(|rows| {
                for t in scaling_regressions(&rows) {
                    let _ = writeln!(stderr, "warning: median time rose at {t} threads");
                }
                let _ = stdout.write_all(render_bench(&rows, b.bench_output).as_bytes());
            })
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn durations() {
        assert_eq!(parse_duration("90"), Ok(90));
        assert_eq!(parse_duration("90s"), Ok(90));
        assert_eq!(parse_duration("15m"), Ok(900));
        assert_eq!(parse_duration("2h"), Ok(7200));
        assert_eq!(parse_duration("1D"), Ok(86_400));
        assert_eq!(parse_duration("1W"), Ok(604_800));
        assert!(parse_duration("-3").is_err());
        assert!(parse_duration("3y").is_err());
        assert!(parse_duration("").is_err());
    }

    #[test]
    fn relative_error_edge_cases() {
        assert_eq!(relative_error(4, 5.0), Some(0.25));
        assert_eq!(relative_error(0, 0.0), Some(0.0));
        assert_eq!(relative_error(0, 1.0), None);
    }

    #[test]
    fn zero_samples_is_a_usage_error() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(
            ["tmotif", "run", "--graph", "x.txt", "--motif", "M4-0", "--delta", "10", "--samples", "0"],
            &mut out,
            &mut err,
        );
        assert_eq!(code, 1, "{}", String::from_utf8_lossy(&err));
    }

    #[test]
    fn scaling_regressions_use_medians() {
        let row = |threads, elapsed_s| BenchRow { threads, rep: 0, elapsed_s, estimate: 1.0 };
        let rows = [row(1, 4.0), row(1, 5.0), row(1, 4.5), row(2, 2.0), row(2, 9.0), row(2, 2.5), row(4, 3.0)];
        assert_eq!(scaling_regressions(&rows), vec![4]);
    }
}
