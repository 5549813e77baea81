//! Command-line front end: `sweep` and `reproduce`.
//!
//! Exit codes: 0 success, 1 numerical or I/O failure, 2 usage or config error.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::experiment::{
    default_sigma_grid, run_sweep_with_threads, ExperimentConfig, SweepError, SweepKind,
    SweepResult,
};
use crate::model::ModelId;
use crate::noise::JitterMode;
use crate::reference::{ReferenceCell, TABLE1, TABLE2};

pub const THREADS_ENV: &str = "QUENCH_HT_THREADS";
pub const CSV_HEADER: &str = "model,pairs,sigma,delta_tau,mean_fidelity,sd,sample_size,seed";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "quench-ht",
    version,
    about = "Hamiltonian tomography by quantum quench under random noise"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a fidelity sweep over σ or Δτ and write CSV plus manifest.
    Sweep(SweepArgs),
    /// Re-run the preset sweep behind a published figure or table.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// One of sic, polarization, pauli, tfim2, rf3
    #[arg(long, value_parser = parse_model)]
    pub model: ModelId,
    #[arg(long, value_enum)]
    pub sweep: SweepArg,
    /// Comma-separated pair counts [default: 3,6,12; 6,12 for rf3]
    #[arg(long, value_parser = parse_pairs)]
    pub pairs: Option<PairList>,
    /// [default: 100; 25 for rf3]
    #[arg(long)]
    pub sample_size: Option<usize>,
    /// Comma-separated σ values; accepts `pi/90`, `7*pi/90`, decimals
    #[arg(long, value_parser = parse_grid)]
    pub sigma_grid: Option<Grid>,
    /// Comma-separated Δτ values
    #[arg(long, value_parser = parse_grid)]
    pub tau_grid: Option<Grid>,
    /// σ held fixed during a τ sweep [default: pi/90]
    #[arg(long, value_parser = parse_real)]
    pub fixed_sigma: Option<f64>,
    #[arg(long, value_parser = parse_real, default_value = "1")]
    pub quench_time: f64,
    #[arg(long, value_enum, default_value = "entry")]
    pub jitter_mode: JitterArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output CSV path [default: <model>_<sweep>.csv]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Comma-separated list of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// Comma-separated list of pair counts.
#[derive(Debug, Clone, PartialEq)]
pub struct PairList(pub Vec<usize>);

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, value_enum)]
    pub target: Target,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output directory
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepArg {
    Sigma,
    Tau,
}

impl From<SweepArg> for SweepKind {
    fn from(s: SweepArg) -> Self {
        match s {
            SweepArg::Sigma => SweepKind::Sigma,
            SweepArg::Tau => SweepKind::Tau,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum JitterArg {
    Entry,
    Pair,
}

impl From<JitterArg> for JitterMode {
    fn from(j: JitterArg) -> Self {
        match j {
            JitterArg::Entry => JitterMode::PerEntry,
            JitterArg::Pair => JitterMode::PerPair,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Table1,
    Table2,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Fig1 => "fig1",
            Target::Fig2 => "fig2",
            Target::Fig3 => "fig3",
            Target::Fig4 => "fig4",
            Target::Fig5 => "fig5",
            Target::Fig6 => "fig6",
            Target::Fig7 => "fig7",
            Target::Table1 => "table1",
            Target::Table2 => "table2",
        }
    }

    fn reference(self) -> Option<&'static [ReferenceCell]> {
        match self {
            Target::Table1 => Some(&TABLE1),
            Target::Table2 => Some(&TABLE2),
            _ => None,
        }
    }
}

/// Sweep configuration behind each published figure or table.
pub fn preset(target: Target, seed: u64) -> ExperimentConfig {
    use ModelId::*;
    use SweepKind::*;
    let (model, sweep) = match target {
        Target::Fig1 => (Sic, Sigma),
        Target::Fig2 => (Polarization, Sigma),
        Target::Fig3 => (Pauli, Sigma),
        Target::Fig4 | Target::Table1 => (Tfim2, Sigma),
        Target::Fig5 => (Tfim2, Tau),
        Target::Fig6 | Target::Table2 => (Rf3, Sigma),
        Target::Fig7 => (Rf3, Tau),
    };
    let mut cfg = ExperimentConfig::new(model, sweep);
    cfg.seed = seed;
    match target {
        Target::Fig5 => cfg.pair_counts = vec![3, 12],
        Target::Table1 => cfg.sigma_grid = default_sigma_grid()[..3].to_vec(),
        Target::Table2 => cfg.sigma_grid = default_sigma_grid()[..9].to_vec(),
        _ => {}
    }
    cfg
}

/// Entry point shared by the binary and tests. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let outcome = match cli.command {
        Command::Sweep(args) => cmd_sweep(args, threads),
        Command::Reproduce(args) => cmd_reproduce(args, threads),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Sweep(SweepError::Config(_)) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(format!("{THREADS_ENV}: {e}")),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!(
                "{THREADS_ENV} must be a positive integer, got '{v}'"
            )),
        },
    }
}

fn cmd_sweep(args: SweepArgs, threads: Option<usize>) -> Result<(), CliError> {
    let mut cfg = ExperimentConfig::new(args.model, args.sweep.into());
    if let Some(pairs) = args.pairs {
        cfg.pair_counts = pairs.0;
    }
    if let Some(n) = args.sample_size {
        cfg.sample_size = n;
    }
    if let Some(g) = args.sigma_grid {
        cfg.sigma_grid = g.0;
    }
    if let Some(g) = args.tau_grid {
        cfg.tau_grid = g.0;
    }
    if let Some(s) = args.fixed_sigma {
        cfg.fixed_sigma = s;
    }
    cfg.quench_time = args.quench_time;
    cfg.jitter_mode = args.jitter_mode.into();
    cfg.seed = args.seed;
    let out = args
        .out
        .unwrap_or_else(|| PathBuf::from(format!("{}_{}.csv", cfg.model, cfg.sweep.as_str())));

    let result = run_sweep_with_threads(&cfg, threads)?;
    write_outputs(&result, &out, None, threads)?;
    print!("{}", summary_table(&result));
    Ok(())
}

fn cmd_reproduce(args: ReproduceArgs, threads: Option<usize>) -> Result<(), CliError> {
    let cfg = preset(args.target, args.seed);
    let result = run_sweep_with_threads(&cfg, threads)?;
    fs::create_dir_all(&args.out).map_err(|source| CliError::Io {
        path: args.out.clone(),
        source,
    })?;
    let csv_path = args.out.join(format!("{}.csv", args.target.name()));
    write_outputs(&result, &csv_path, Some(args.target), threads)?;
    print!("{}", summary_table(&result));
    if let Some(cells) = args.target.reference() {
        let table = comparison_table(&result, cells);
        let path = args
            .out
            .join(format!("{}_comparison.txt", args.target.name()));
        write_file(&path, &table)?;
        print!("{table}");
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_outputs(
    result: &SweepResult,
    csv_path: &Path,
    target: Option<Target>,
    threads: Option<usize>,
) -> Result<(), CliError> {
    write_file(csv_path, &render_csv(result))?;
    let mut manifest_path = csv_path.as_os_str().to_owned();
    manifest_path.push(".manifest");
    let manifest = RunManifest::new(&result.config, target, threads, csv_path);
    write_file(Path::new(&manifest_path), &manifest.render())
}

/// CSV body with the fixed header; floats use the shortest round-trip form.
pub fn render_csv(result: &SweepResult) -> String {
    let cfg = &result.config;
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in &result.points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            cfg.model,
            p.pairs,
            p.sigma,
            p.delta_tau,
            p.mean_fidelity,
            p.sd,
            p.sample_size,
            cfg.seed
        );
    }
    out
}

pub fn summary_table(result: &SweepResult) -> String {
    let cfg = &result.config;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "model={} sweep={} sample_size={} seed={}",
        cfg.model,
        cfg.sweep.as_str(),
        cfg.sample_size,
        cfg.seed
    );
    let _ = writeln!(
        out,
        "{:>5}  {:>12}  {:>10}  {:>13}  {:>11}",
        "pairs", "sigma", "delta_tau", "mean_fidelity", "sd"
    );
    for p in &result.points {
        let _ = writeln!(
            out,
            "{:>5}  {:>12.9}  {:>10.6}  {:>13.9}  {:>11.9}",
            p.pairs, p.sigma, p.delta_tau, p.mean_fidelity, p.sd
        );
    }
    out
}

/// Side-by-side comparison of simulated and published values.
pub fn comparison_table(result: &SweepResult, cells: &[ReferenceCell]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>8}  {:>5}  {:>9}  {:>9}  {:>7}  {:>7}  {:>7}  {:>7}",
        "sigma", "pairs", "mean", "ref_mean", "diff", "sd", "ref_sd", "diff"
    );
    for cell in cells {
        let Some(p) = result
            .points
            .iter()
            .find(|p| p.pairs == cell.pairs && (p.sigma - cell.sigma()).abs() < 1e-12)
        else {
            continue;
        };
        let _ = writeln!(
            out,
            "{:>8}  {:>5}  {:>9.4}  {:>9.3}  {:>+7.3}  {:>7.4}  {:>7.3}  {:>+7.3}",
            cell.sigma_label(),
            cell.pairs,
            p.mean_fidelity,
            cell.mean,
            p.mean_fidelity - cell.mean,
            p.sd,
            cell.sd,
            p.sd - cell.sd
        );
    }
    out
}

/// Resolved run configuration written next to every CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    entries: Vec<(String, String)>,
}

impl RunManifest {
    pub fn new(
        cfg: &ExperimentConfig,
        target: Option<Target>,
        threads: Option<usize>,
        csv_path: &Path,
    ) -> Self {
        let join = |xs: &[f64]| {
            xs.iter()
                .map(|&x| format_sig17(x))
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut entries = vec![
            ("fixed_sigma".to_string(), format_sig17(cfg.fixed_sigma)),
            ("jitter_mode".into(), cfg.jitter_mode.as_str().into()),
            ("model".into(), cfg.model.to_string()),
            ("output_csv".into(), csv_path.display().to_string()),
            (
                "pairs".into(),
                cfg.pair_counts
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("quench_time".into(), format_sig17(cfg.quench_time)),
            ("sample_size".into(), cfg.sample_size.to_string()),
            ("seed".into(), cfg.seed.to_string()),
            ("sigma_grid".into(), join(&cfg.sigma_grid)),
            ("sweep".into(), cfg.sweep.as_str().into()),
            ("target".into(), target.map_or("none", Target::name).into()),
            ("tau_grid".into(), join(&cfg.tau_grid)),
            (
                "threads".into(),
                threads.map_or("default".to_string(), |n| n.to_string()),
            ),
            (
                "timestamp_utc".into(),
                chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string(),
            ),
            ("version".into(), env!("CARGO_PKG_VERSION").into()),
        ];
        entries.sort();
        Self { entries }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        self.entries
            .iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }
}

/// Plain decimal with 17 significant digits, enough to round-trip any f64.
pub fn format_sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (16 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

fn parse_model(s: &str) -> Result<ModelId, String> {
    s.parse::<ModelId>().map_err(|e| e.to_string())
}

fn parse_pairs(s: &str) -> Result<PairList, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid pair count '{t}'"))
        })
        .collect::<Result<_, _>>()
        .map(PairList)
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.split(',')
        .map(parse_real)
        .collect::<Result<_, _>>()
        .map(Grid)
}

/// Parses `pi/INT`, `INT*pi/INT`, `INT*pi`, `pi`, or a plain decimal.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let err = || format!("invalid number '{s}' (expected a decimal, pi/N or K*pi/N)");
    let value = if t.contains("pi") {
        let (numer, denom) = match t.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (t, None),
        };
        let factor = match numer.split_once('*') {
            Some((k, "pi")) => k.trim().parse::<u64>().map_err(|_| err())? as f64,
            None if numer == "pi" => 1.0,
            _ => return Err(err()),
        };
        let divisor = match denom {
            Some(d) => {
                let d = d.trim().parse::<u64>().map_err(|_| err())?;
                if d == 0 {
                    return Err(err());
                }
                d as f64
            }
            None => 1.0,
        };
        factor * PI / divisor
    } else {
        t.parse::<f64>().map_err(|_| err())?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(err())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_literals() {
        assert_eq!(parse_real("pi/90").unwrap(), PI / 90.0);
        assert_eq!(parse_real("7*pi/90").unwrap(), 7.0 * PI / 90.0);
        assert_eq!(parse_real("2*pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_real("0.05").unwrap(), 0.05);
        assert_eq!(parse_real("0").unwrap(), 0.0);
        for bad in ["pi/0", "x", "pi/ten", "3*pie", "inf", "pi*2"] {
            assert!(parse_real(bad).is_err(), "{bad}");
        }
        assert_eq!(
            parse_grid("0,pi/90, 0.1").unwrap(),
            Grid(vec![0.0, PI / 90.0, 0.1])
        );
    }

    #[test]
    fn sig17_round_trips() {
        for x in [PI / 90.0, 1.0, 0.01, 123.456, 7.0 * PI / 90.0, 1e-5] {
            let s = format_sig17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            assert!(!s.contains('e'));
        }
        assert_eq!(format_sig17(PI / 90.0), "0.034906585039886591");
        assert_eq!(format_sig17(0.0), "0");
    }

    #[test]
    fn presets_match_published_setups() {
        let t1 = preset(Target::Table1, 1);
        assert_eq!(t1.model, ModelId::Tfim2);
        assert_eq!(t1.sigma_grid.len(), 3);
        assert_eq!(t1.pair_counts, vec![3, 6, 12]);
        assert_eq!(t1.sample_size, 100);

        let t2 = preset(Target::Table2, 1);
        assert_eq!(t2.sigma_grid.len(), 9);
        assert_eq!(t2.pair_counts, vec![6, 12]);
        assert_eq!(t2.sample_size, 25);

        let f5 = preset(Target::Fig5, 1);
        assert_eq!(f5.sweep, SweepKind::Tau);
        assert_eq!(f5.pair_counts, vec![3, 12]);
        assert_eq!(f5.fixed_sigma, PI / 90.0);
        assert_eq!(f5.quench_time, 1.0);

        let f7 = preset(Target::Fig7, 1);
        assert_eq!((f7.model, f7.sweep), (ModelId::Rf3, SweepKind::Tau));
        assert_eq!(f7.pair_counts, vec![6, 12]);
        for t in [
            Target::Fig1,
            Target::Fig2,
            Target::Fig3,
            Target::Fig4,
            Target::Fig6,
        ] {
            assert!(preset(t, 0).validate().is_ok());
        }
    }

    #[test]
    fn manifest_keys_are_sorted() {
        let cfg = preset(Target::Table1, 1);
        let m = RunManifest::new(&cfg, Some(Target::Table1), None, Path::new("t.csv"));
        let rendered = m.render();
        let keys: Vec<&str> = rendered
            .lines()
            .map(|l| l.split(" = ").next().unwrap())
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(m.get("sigma_grid").unwrap().split(',').count(), 3);
        assert_eq!(m.get("target"), Some("table1"));
    }

    #[test]
    fn unknown_model_is_usage_error() {
        assert_eq!(
            run(["quench-ht", "sweep", "--model", "ising", "--sweep", "sigma"]),
            EXIT_USAGE
        );
        assert_eq!(
            run([
                "quench-ht",
                "sweep",
                "--model",
                "pauli",
                "--sweep",
                "sigma",
                "--sigma-grid",
                "abc"
            ]),
            EXIT_USAGE
        );
        assert_eq!(
            run(["quench-ht", "reproduce", "--target", "fig9"]),
            EXIT_USAGE
        );
    }
}
