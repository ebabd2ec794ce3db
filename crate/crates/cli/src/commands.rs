use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use bootgen::automata::{dfg_to_dfa, log_to_dfa, Dfa, Dfg};
use bootgen::bootstrap::{
    bootstrap_generalization, percentile_interval, EstimatorSpec, GeneralizationEstimate,
    MeasureSelection, Summary,
};
use bootgen::discovery::{discover_dfg, simulate_log, DiscoveryConfig, WalkConfig, Weighting};
use bootgen::entropy::{measure, topological_entropy, Measurement};
use bootgen::experiment::{reproduce_table1, SweepConfig};
use bootgen::format::{parse_dfg, parse_log, write_dfg, write_log};
use bootgen::sampling::{LogSampler, SamplerConfig};
use bootgen::EventLog;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{
    Command, DiscoverArgs, EntropyArgs, EstimateArgs, Lsm, MeasureArgs, SampleArgs, SamplerArgs,
    SimulateArgs, SweepArgs, Which,
};

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Estimate(args) => estimate(args),
        Command::Measure(args) => {
            let m = exact(&args)?;
            let mut out = String::new();
            writeln!(out, "precision\t{:.6}", m.precision)?;
            writeln!(out, "recall\t{:.6}", m.recall)?;
            emit(None, &out)
        }
        Command::Precision(args) => emit(None, &format!("{:.6}\n", exact(&args)?.precision)),
        Command::Recall(args) => emit(None, &format!("{:.6}\n", exact(&args)?.recall)),
        Command::Discover(args) => discover(args),
        Command::Simulate(args) => simulate(args),
        Command::Sample(args) => sample(args),
        Command::Entropy(args) => entropy(args),
        Command::ReproduceTable1(args) => sweep(args),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_log(path: &Path) -> Result<EventLog> {
    parse_log(&read(path)?).with_context(|| path.display().to_string())
}

fn load_dfg(path: &Path) -> Result<Dfg> {
    parse_dfg(&read(path)?).with_context(|| path.display().to_string())
}

/// Writes to `path`, or to stdout when there is none.
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn sampler_config(args: &SamplerArgs) -> (LogSampler, SamplerConfig) {
    let sampler = match args.lsm {
        Lsm::Replacement => LogSampler::Replacement,
        Lsm::Breeding => LogSampler::Breeding,
    };
    let cfg = SamplerConfig {
        n: args.n,
        g: args.g,
        k: args.k,
        p: args.p,
        seed: args.seed,
    };
    (sampler, cfg)
}

fn exact(args: &MeasureArgs) -> Result<Measurement> {
    let model = dfg_to_dfa(&load_dfg(&args.model)?);
    let other: Dfa = match (&args.system, &args.log) {
        (Some(system), _) => dfg_to_dfa(&load_dfg(system)?),
        (None, Some(log)) => log_to_dfa(&load_log(log)?),
        (None, None) => unreachable!("clap requires one of --system and --log"),
    };
    Ok(measure(&model, &other)?)
}

fn estimate(args: EstimateArgs) -> Result<()> {
    let model = dfg_to_dfa(&load_dfg(&args.model)?);
    let log = load_log(&args.log)?;
    let (sampler, cfg) = sampler_config(&args.sampler);
    let spec = EstimatorSpec {
        measure: match args.measure {
            Which::Both => MeasureSelection::Both,
            Which::Precision => MeasureSelection::Precision,
            Which::Recall => MeasureSelection::Recall,
        },
        sampler,
        cfg,
        m: args.m,
        workers: args.workers as usize,
    };
    let e = bootstrap_generalization(&model, &log, &spec)?;
    emit(
        args.out.as_deref(),
        &estimate_table(&e, args.percentile, args.harmonic_mean)?,
    )?;
    if let Some(raw) = &args.raw {
        emit(Some(raw), &raw_table(&e)?)?;
    }
    Ok(())
}

fn estimate_table(e: &GeneralizationEstimate, percentile: bool, harmonic: bool) -> Result<String> {
    let mut out = String::from("measure\tmean\tci95\tvariance\treplicates");
    if percentile {
        out.push_str("\tp2.5\tp97.5");
    }
    out.push('\n');
    let column = |f: fn(&bootgen::bootstrap::ReplicateResult) -> Option<f64>| -> Vec<f64> {
        e.per_replicate.iter().filter_map(f).collect()
    };
    let harmonic_values: Vec<f64> = e
        .per_replicate
        .iter()
        .filter_map(|r| {
            Some(
                Measurement {
                    precision: r.precision?,
                    recall: r.recall?,
                }
                .harmonic_mean(),
            )
        })
        .collect();
    let mut rows: Vec<(&str, Summary, Vec<f64>)> = Vec::new();
    if let Some(s) = e.precision {
        rows.push(("precision", s, column(|r| r.precision)));
    }
    if let Some(s) = e.recall {
        rows.push(("recall", s, column(|r| r.recall)));
    }
    if harmonic {
        if let Some(s) = e.harmonic_mean() {
            rows.push(("harmonic_mean", s, harmonic_values));
        }
    }
    rows.push((
        "distinct_traces",
        e.distinct_traces,
        column(|r| Some(r.distinct_traces as f64)),
    ));
    for (name, s, values) in rows {
        write!(
            out,
            "{name}\t{:.6}\t{:.6}\t{:.6}\t{}",
            s.mean, s.ci95, s.variance, e.replicates
        )?;
        if percentile {
            let (lo, hi) = percentile_interval(&values)?;
            write!(out, "\t{lo:.6}\t{hi:.6}")?;
        }
        out.push('\n');
    }
    Ok(out)
}

fn raw_table(e: &GeneralizationEstimate) -> Result<String> {
    let cell = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.6}"));
    let mut out = String::from("replicate\tprecision\trecall\tdistinct_traces\n");
    for (i, r) in e.per_replicate.iter().enumerate() {
        writeln!(
            out,
            "{i}\t{}\t{}\t{}",
            cell(r.precision),
            cell(r.recall),
            r.distinct_traces
        )?;
    }
    Ok(out)
}

fn discover(args: DiscoverArgs) -> Result<()> {
    let log = load_log(&args.log)?;
    let cfg = DiscoveryConfig {
        filter_fraction: args.filter_fraction,
    };
    emit(args.out.as_deref(), &write_dfg(&discover_dfg(&log, &cfg)?))
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let g = load_dfg(&args.dfg)?;
    let cfg = WalkConfig {
        trace_count: args.traces,
        max_length: args.max_length,
        weighting: if args.weighted {
            Weighting::Frequency
        } else {
            Weighting::Uniform
        },
        seed: args.seed,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    emit(
        args.out.as_deref(),
        &write_log(&simulate_log(&g, &cfg, &mut rng)?),
    )
}

fn sample(args: SampleArgs) -> Result<()> {
    let log = load_log(&args.log)?;
    let (sampler, cfg) = sampler_config(&args.sampler);
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    emit(
        args.out.as_deref(),
        &write_log(&sampler.sample(&log, &cfg, &mut rng)?),
    )
}

fn entropy(args: EntropyArgs) -> Result<()> {
    let dfa = match (&args.dfg, &args.log) {
        (Some(dfg), _) => dfg_to_dfa(&load_dfg(dfg)?),
        (None, Some(log)) => log_to_dfa(&load_log(log)?),
        (None, None) => unreachable!("clap requires one of --dfg and --log"),
    };
    let e = topological_entropy(&dfa)?;
    let mut out = String::new();
    writeln!(out, "entropy\t{:.6}", e.value)?;
    writeln!(out, "spectral_radius\t{:.6}", e.spectral_radius)?;
    emit(None, &out)
}

fn sweep(args: SweepArgs) -> Result<()> {
    let mut cfg = SweepConfig {
        seed: args.seed,
        workers: args.workers as usize,
        m: args.m,
        ..SweepConfig::default()
    };
    if args.large {
        cfg.n_values.extend([100_000, 1_000_000]);
    }
    let report = reproduce_table1(&cfg)?;
    for cell in report.by_n.iter().chain(&report.by_g) {
        eprintln!(
            "n = {}, g = {}: {:.3} s",
            cell.n,
            cell.g,
            cell.elapsed.as_secs_f64()
        );
    }
    emit(args.out.as_deref(), &report.render(args.timings))
}
