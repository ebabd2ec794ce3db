mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};

const USAGE: u8 = 1;
const PARSE: u8 = 2;
const DOMAIN: u8 = 3;

/// Bootstrap estimates of how well a process model generalizes.
#[derive(Debug, Parser)]
#[command(name = "bootgen", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bootstrap precision and recall of a model against a log's system.
    Estimate(EstimateArgs),
    /// Exact precision and recall of a model against a system or a log.
    Measure(MeasureArgs),
    /// Exact precision only.
    Precision(MeasureArgs),
    /// Exact recall only.
    Recall(MeasureArgs),
    /// Discover a directly-follows graph from a log.
    Discover(DiscoverArgs),
    /// Simulate a log by random walks through a directly-follows graph.
    Simulate(SimulateArgs),
    /// Draw one replicate log.
    Sample(SampleArgs),
    /// Topological entropy of the language of a graph or a log.
    Entropy(EntropyArgs),
    /// Run the bundled parameter sweep over sample size and generations.
    #[command(name = "reproduce-table1", alias = "reproduce_table1")]
    ReproduceTable1(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Lsm {
    Replacement,
    Breeding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Both,
    Precision,
    Recall,
}

#[derive(Debug, Args)]
struct SamplerArgs {
    /// Log sampling method.
    #[arg(long, value_enum, default_value_t = Lsm::Breeding)]
    lsm: Lsm,
    /// Traces per replicate log.
    #[arg(short = 'n', long = "sample-size", default_value_t = 1000)]
    n: usize,
    /// Breeding generations.
    #[arg(short = 'g', long = "generations", default_value_t = 10_000)]
    g: usize,
    /// Length of the shared subtrace at a breeding site.
    #[arg(short = 'k', long = "subtrace-length", default_value_t = 2)]
    k: usize,
    /// Breeding probability.
    #[arg(short = 'p', long = "breed-probability", default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    /// Model as a directly-follows graph file.
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    log: PathBuf,
    #[command(flatten)]
    sampler: SamplerArgs,
    /// Replicate count.
    #[arg(short = 'm', long = "replicates", default_value_t = 100)]
    m: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
    #[arg(long, value_enum, default_value_t = Which::Both)]
    measure: Which,
    /// Add 2.5% and 97.5% percentile columns.
    #[arg(long)]
    percentile: bool,
    /// Add a row for the per-replicate harmonic mean of precision and recall.
    #[arg(long)]
    harmonic_mean: bool,
    /// Write per-replicate values to this file.
    #[arg(long)]
    raw: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("against").required(true))]
struct MeasureArgs {
    #[arg(long)]
    model: PathBuf,
    /// System as a directly-follows graph file.
    #[arg(long, group = "against")]
    system: Option<PathBuf>,
    /// Measure against the language of a log instead.
    #[arg(long, group = "against")]
    log: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DiscoverArgs {
    #[arg(long)]
    log: PathBuf,
    /// Fraction of distinct traces, least frequent first, to drop. Accepts
    /// decimals or ratios such as `1/3`.
    #[arg(long, default_value = "0", value_parser = parse_fraction)]
    filter_fraction: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    dfg: PathBuf,
    #[arg(long, default_value_t = 100)]
    traces: usize,
    #[arg(long, default_value_t = 1000)]
    max_length: usize,
    /// Follow arcs in proportion to their frequencies.
    #[arg(long)]
    weighted: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    log: PathBuf,
    #[command(flatten)]
    sampler: SamplerArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true))]
struct EntropyArgs {
    #[arg(long, group = "source")]
    dfg: Option<PathBuf>,
    #[arg(long, group = "source")]
    log: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
    /// Replicates per cell.
    #[arg(short = 'm', long = "replicates", default_value_t = 100)]
    m: usize,
    /// Also run n = 100000 and n = 1000000 (slow).
    #[arg(long)]
    large: bool,
    /// Add a wall-clock column; the report is then no longer reproducible.
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let number = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    match s.split_once('/') {
        Some((num, den)) => Ok(number(num)? / number(den)?),
        None => number(s),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<bootgen::Error>() {
            return match e.root() {
                bootgen::Error::Parse { .. } => PARSE,
                _ => DOMAIN,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return USAGE;
        }
    }
    DOMAIN
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(USAGE),
            };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
