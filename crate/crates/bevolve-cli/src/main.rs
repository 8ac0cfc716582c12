//! Command-line front end: `simulate`, `theory`, `experiment`, `verify`.
//!
//! Every value can come from a flat TOML config file (`--config`);
//! command-line flags override file values, which override the built-in
//! defaults. Exit status: 0 on success, 1 when a verification gate or
//! certificate fails (or on a runtime error), 2 on usage errors.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use bevolve::experiments::{
    run_connectivity, run_degrees, run_giant, run_isolated, run_sg_disconnect, ExperimentConfig,
    ExperimentReport,
};
use bevolve::oracle::certificates;
use bevolve::samplers::sample_process;
use bevolve::theory::{
    connectivity_prediction, connectivity_threshold, giant_fraction, giant_threshold,
    sg_disconnect_exponent,
};
use bevolve::{Params, Side, Variant};

/// Environment variable naming the default output directory.
const OUT_DIR_VAR: &str = "BEVOLVE_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "bevolve",
    version,
    about = "Bipartite random graphs evolving by degrees: simulation, \
             closed-form predictions, and verification",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one process trace and write it to a file.
    Simulate(SimulateArgs),
    /// Print closed-form predictions as JSON on stdout.
    Theory(TheoryArgs),
    /// Run a seeded replica experiment; write CSV + JSON reports.
    Experiment(ExperimentArgs),
    /// Run the exact-enumeration certificates and print a table.
    Verify,
}

/// Model parameters and the config file, shared by every subcommand that
/// needs a parameterized process.
#[derive(Args)]
struct SharedArgs {
    /// Left attachment weight, > 0 (default 1).
    #[arg(long)]
    alpha: Option<f64>,
    /// Right attachment weight, > 0 (default 1).
    #[arg(long)]
    beta: Option<f64>,
    /// Number of left vertices (default 1000).
    #[arg(long = "L", value_name = "COUNT")]
    left: Option<u32>,
    /// Number of right vertices (default 1000).
    #[arg(long = "R", value_name = "COUNT")]
    right: Option<u32>,
    /// Flat TOML config file; flags override its values.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    shared: SharedArgs,
    /// Process variant: simple | multi (default multi).
    #[arg(long)]
    variant: Option<String>,
    /// Number of edges to draw.
    #[arg(long)]
    t: Option<u64>,
    /// RNG seed, decimal 64-bit (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Trace output path (default <out-dir>/trace-<variant>-t<T>-seed<SEED>.txt).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TheoryArgs {
    #[command(flatten)]
    shared: SharedArgs,
    /// What to print: giant | connectivity | thresholds | all (default all).
    #[arg(long)]
    what: Option<String>,
    /// Distance from the giant threshold, t = (1 + epsilon) t_c (L + R).
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Multiple of the connectivity scale, t = x tau.
    #[arg(long)]
    x: Option<f64>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Which experiment to run.
    #[arg(value_enum)]
    kind: ExperimentKind,
    #[command(flatten)]
    shared: SharedArgs,
    /// Process variant: simple | multi (each experiment has a default).
    #[arg(long)]
    variant: Option<String>,
    /// Side whose degrees are observed: left | right.
    #[arg(long)]
    side: Option<String>,
    /// Explicit step count, overriding the experiment's natural scale.
    #[arg(long)]
    t: Option<u64>,
    /// Distance from the giant threshold (giant experiment).
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Multiple of the connectivity scale (isolated / connectivity).
    #[arg(long)]
    x: Option<f64>,
    /// Exponent offset, t = (L + R)^(1 + delta) (sg-disconnect).
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Number of independent replicas (default 100).
    #[arg(long)]
    replicas: Option<u32>,
    /// Master seed; replica seeds are derived from it (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for the CSV and JSON reports (default $BEVOLVE_OUT_DIR or .).
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExperimentKind {
    Giant,
    Degrees,
    Isolated,
    Connectivity,
    SgDisconnect,
}

/// Values a config file may set. Unknown keys are rejected so typos
/// surface as usage errors instead of silently falling back to defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    alpha: Option<f64>,
    beta: Option<f64>,
    #[serde(rename = "L")]
    left: Option<u32>,
    #[serde(rename = "R")]
    right: Option<u32>,
    variant: Option<String>,
    side: Option<String>,
    t: Option<u64>,
    epsilon: Option<f64>,
    x: Option<f64>,
    delta: Option<f64>,
    replicas: Option<u32>,
    seed: Option<u64>,
    what: Option<String>,
    out: Option<PathBuf>,
    out_dir: Option<PathBuf>,
}

/// Error class that should exit with status 2 and point at the usage text.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl fmt::Display) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            eprintln!("run `bevolve --help` for usage");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Theory(args) => theory(args),
        Command::Experiment(args) => experiment(args),
        Command::Verify => verify(),
    }
}

fn load_file(path: Option<&Path>) -> anyhow::Result<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    toml::from_str(&text).map_err(|e| usage(format!("config file {}: {e}", path.display())))
}

fn resolve_params(shared: &SharedArgs, file: &FileConfig) -> anyhow::Result<Params> {
    let alpha = shared.alpha.or(file.alpha).unwrap_or(1.0);
    let beta = shared.beta.or(file.beta).unwrap_or(1.0);
    let left = shared.left.or(file.left).unwrap_or(1000);
    let right = shared.right.or(file.right).unwrap_or(1000);
    Params::new(alpha, beta, left, right).map_err(usage)
}

fn parse_variant(s: &str) -> anyhow::Result<Variant> {
    Variant::from_str(s).map_err(usage)
}

fn parse_side(s: &str) -> anyhow::Result<Side> {
    Side::from_str(s).map_err(usage)
}

/// Output directory resolution: flag, then config file, then the
/// environment variable, then the working directory.
fn resolve_out_dir(flag: Option<PathBuf>, file: Option<PathBuf>) -> PathBuf {
    flag.or(file)
        .or_else(|| std::env::var_os(OUT_DIR_VAR).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn simulate(args: SimulateArgs) -> anyhow::Result<ExitCode> {
    let file = load_file(args.shared.config.as_deref())?;
    let params = resolve_params(&args.shared, &file)?;
    let variant = match args.variant.as_deref().or(file.variant.as_deref()) {
        Some(s) => parse_variant(s)?,
        None => Variant::Multi,
    };
    let t = args
        .t
        .or(file.t)
        .ok_or_else(|| usage("simulate needs a step count: pass --t or set t in the config"))?;
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let out = match args.out.or(file.out) {
        Some(path) => path,
        None => resolve_out_dir(None, file.out_dir)
            .join(format!("trace-{variant}-t{t}-seed{seed}.txt")),
    };

    let trace = sample_process(&params, variant, t, seed).map_err(usage)?;
    if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .with_context(|| format!("creating output directory {}", parent.display()))?;
    }
    trace
        .save(&out)
        .with_context(|| format!("writing trace to {}", out.display()))?;
    println!(
        "wrote {} ({} edges, {} variant, seed {})",
        out.display(),
        trace.edges.len(),
        variant,
        seed
    );
    Ok(ExitCode::SUCCESS)
}

fn theory(args: TheoryArgs) -> anyhow::Result<ExitCode> {
    let file = load_file(args.shared.config.as_deref())?;
    let params = resolve_params(&args.shared, &file)?;
    let what = args.what.or(file.what).unwrap_or_else(|| "all".to_string());
    let epsilon = args.epsilon.or(file.epsilon).unwrap_or(0.5);
    let x = args.x.or(file.x).unwrap_or(1.0);

    let thresholds = |params: &Params| {
        json!({
            "t_c": giant_threshold(params),
            "tau": connectivity_threshold(params),
            "Z": sg_disconnect_exponent(params.alpha(), params.beta()),
        })
    };
    // The per-side rates plus their sum `lambda`; `limit = exp(-lambda)`.
    let connectivity = |params: &Params| -> anyhow::Result<serde_json::Value> {
        let pred = connectivity_prediction(params, x).map_err(usage)?;
        let mut value = serde_json::to_value(&pred)?;
        value
            .as_object_mut()
            .expect("prediction serializes to an object")
            .insert("lambda".into(), json!(pred.lambda_left + pred.lambda_right));
        Ok(value)
    };
    let value = match what.as_str() {
        "giant" => serde_json::to_value(giant_fraction(&params, epsilon).map_err(usage)?)?,
        "connectivity" => connectivity(&params)?,
        "thresholds" => thresholds(&params),
        "all" => json!({
            "giant": giant_fraction(&params, epsilon).map_err(usage)?,
            "connectivity": connectivity(&params)?,
            "thresholds": thresholds(&params),
        }),
        other => {
            return Err(usage(format!(
                "unknown --what value {other:?}; expected giant, connectivity, thresholds, or all"
            )))
        }
    };
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(ExitCode::SUCCESS)
}

fn experiment(args: ExperimentArgs) -> anyhow::Result<ExitCode> {
    let file = load_file(args.shared.config.as_deref())?;
    let params = resolve_params(&args.shared, &file)?;

    let mut config = ExperimentConfig::new(params)
        .replicas(args.replicas.or(file.replicas).unwrap_or(100))
        .master_seed(args.seed.or(file.seed).unwrap_or(0));
    if let Some(s) = args.variant.as_deref().or(file.variant.as_deref()) {
        config = config.variant(parse_variant(s)?);
    }
    if let Some(s) = args.side.as_deref().or(file.side.as_deref()) {
        config = config.side(parse_side(s)?);
    }
    config.t = args.t.or(file.t);
    config.epsilon = args.epsilon.or(file.epsilon);
    config.x = args.x.or(file.x);
    config.delta = args.delta.or(file.delta);

    let report = match args.kind {
        ExperimentKind::Giant => run_giant(&config),
        ExperimentKind::Degrees => run_degrees(&config),
        ExperimentKind::Isolated => run_isolated(&config),
        ExperimentKind::Connectivity => run_connectivity(&config),
        ExperimentKind::SgDisconnect => run_sg_disconnect(&config),
    }
    .map_err(usage)?;

    let out_dir = resolve_out_dir(args.out_dir, file.out_dir);
    let (csv_path, json_path) = report.write_files(&out_dir)?;
    print_report(&report);
    println!("wrote {}", csv_path.display());
    println!("wrote {}", json_path.display());
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn print_report(report: &ExperimentReport) {
    println!(
        "experiment {} ({} replicas, t = {})",
        report.experiment, report.config.replicas, report.t_used
    );
    for warning in &report.warnings {
        println!("  warning: {warning}");
    }
    if let Some(v) = report.theory_value {
        println!("  theory value: {v}");
    }
    for (key, value) in &report.summary {
        println!("  {key} = {value}");
    }
    for gate in &report.gates {
        println!(
            "  gate {}: {} {} {}  {}",
            gate.name,
            gate.observed,
            gate.op,
            gate.bound,
            if gate.passed { "PASS" } else { "FAIL" }
        );
    }
    println!("result: {}", if report.passed { "PASS" } else { "FAIL" });
}

fn verify() -> anyhow::Result<ExitCode> {
    let certs = certificates::run_all()?;
    println!(
        "{:<16} {:>6} {:>12} {:>10}  status",
        "certificate", "cases", "max-error", "tolerance"
    );
    for c in &certs {
        println!(
            "{:<16} {:>6} {:>12.3e} {:>10.0e}  {}",
            c.name,
            c.cases,
            c.max_error,
            c.tolerance,
            if c.passed { "PASS" } else { "FAIL" }
        );
        println!("  {}", c.detail);
    }
    if certs.iter().all(|c| c.passed) {
        println!("all certificates passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("certificate failure");
        Ok(ExitCode::from(1))
    }
}
