//! Parameter sweep over the running example: bootstrap estimates of the
//! bundled model against the bundled log, with breeding, for a range of
//! sample sizes `n` (panel a) and of generation counts `g` (panel b).
//!
//! Every cell uses the same master seed, so a cell shared by both panels is
//! computed once and reported identically.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::automata::{dfg_to_dfa, Dfa};
use crate::bootstrap::{
    bootstrap_generalization, EstimatorSpec, GeneralizationEstimate, MeasureSelection,
};
use crate::error::Result;
use crate::fixtures;
use crate::sampling::{LogSampler, SamplerConfig};
use crate::trace::EventLog;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Sample sizes for panel a.
    pub n_values: Vec<usize>,
    /// Generations held fixed in panel a.
    pub panel_a_g: usize,
    /// Generation counts for panel b.
    pub g_values: Vec<usize>,
    /// Sample size held fixed in panel b.
    pub panel_b_n: usize,
    pub m: usize,
    pub k: usize,
    pub p: f64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_values: vec![100, 1_000, 10_000],
            panel_a_g: 10_000,
            g_values: vec![100, 1_000, 10_000],
            panel_b_n: 10_000,
            m: 100,
            k: 2,
            p: 1.0,
            seed: 42,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Cell {
    pub n: usize,
    pub g: usize,
    pub estimate: GeneralizationEstimate,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub by_n: Vec<Cell>,
    pub by_g: Vec<Cell>,
}

/// Runs both panels on the bundled model and log.
pub fn reproduce_table1(cfg: &SweepConfig) -> Result<SweepReport> {
    run_sweep(&dfg_to_dfa(&fixtures::model()), &fixtures::log(), cfg)
}

pub fn run_sweep(model: &Dfa, log: &EventLog, cfg: &SweepConfig) -> Result<SweepReport> {
    let mut cache: BTreeMap<(usize, usize), Cell> = BTreeMap::new();
    let mut cell = |n: usize, g: usize| -> Result<Cell> {
        if let Some(c) = cache.get(&(n, g)) {
            return Ok(c.clone());
        }
        let spec = EstimatorSpec {
            measure: MeasureSelection::Both,
            sampler: LogSampler::Breeding,
            cfg: SamplerConfig {
                n,
                g,
                k: cfg.k,
                p: cfg.p,
                seed: cfg.seed,
            },
            m: cfg.m,
            workers: cfg.workers,
        };
        let started = Instant::now();
        let estimate = bootstrap_generalization(model, log, &spec)?;
        let c = Cell {
            n,
            g,
            estimate,
            elapsed: started.elapsed(),
        };
        cache.insert((n, g), c.clone());
        Ok(c)
    };
    let by_n = cfg
        .n_values
        .iter()
        .map(|&n| cell(n, cfg.panel_a_g))
        .collect::<Result<Vec<_>>>()?;
    let by_g = cfg
        .g_values
        .iter()
        .map(|&g| cell(cfg.panel_b_n, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        config: cfg.clone(),
        by_n,
        by_g,
    })
}

impl SweepReport {
    /// Tab-separated rendering of both panels. Wall-clock columns are
    /// included only on request, since they differ between runs.
    pub fn render(&self, timings: bool) -> String {
        let c = &self.config;
        let mut out = String::new();
        writeln!(
            out,
            "# panel a: varying n (g = {}, m = {}, k = {}, p = {}, seed = {})",
            c.panel_a_g, c.m, c.k, c.p, c.seed
        )
        .unwrap();
        render_panel(&mut out, "n", &self.by_n, |cell| cell.n, timings);
        writeln!(out).unwrap();
        writeln!(
            out,
            "# panel b: varying g (n = {}, m = {}, k = {}, p = {}, seed = {})",
            c.panel_b_n, c.m, c.k, c.p, c.seed
        )
        .unwrap();
        render_panel(&mut out, "g", &self.by_g, |cell| cell.g, timings);
        out
    }
}

fn render_panel(
    out: &mut String,
    name: &str,
    cells: &[Cell],
    key: fn(&Cell) -> usize,
    timings: bool,
) {
    write!(
        out,
        "{name}\tprecision\tprecision_ci95\trecall\trecall_ci95\ttraces\ttraces_ci95"
    )
    .unwrap();
    if timings {
        out.push_str("\tseconds");
    }
    out.push('\n');
    for cell in cells {
        let e = &cell.estimate;
        let p = e.precision.expect("sweep measures precision");
        let r = e.recall.expect("sweep measures recall");
        let d = e.distinct_traces;
        write!(
            out,
            "{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.2}\t{:.6}",
            key(cell),
            p.mean,
            p.ci95,
            r.mean,
            r.ci95,
            d.mean,
            d.ci95
        )
        .unwrap();
        if timings {
            write!(out, "\t{:.3}", cell.elapsed.as_secs_f64()).unwrap();
        }
        out.push('\n');
    }
}
