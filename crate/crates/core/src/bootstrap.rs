//! Bootstrap estimation of generalization: draw `m` replicate logs from the
//! observed log, measure the model against each replicate's language, and
//! aggregate.
//!
//! Replicate `i` draws from its own random stream, derived from the master
//! seed and `i` alone, so the estimate does not depend on how replicates
//! are spread across worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::automata::{log_to_dfa, Dfa};
use crate::entropy::{Measurement, PreparedModel};
use crate::error::{Error, Result};
use crate::sampling::{LogSampler, SamplerConfig};
use crate::trace::EventLog;

/// z-score of a two-sided 95% normal interval.
pub const Z95: f64 = 1.96;

/// Mean, normal-approximation 95% half-width, and unbiased variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub ci95: f64,
    pub variance: f64,
}

pub fn aggregate(data: &[f64]) -> Result<Summary> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let n = data.len() as f64;
    let mean = data.iter().sum::<f64>() / n;
    let variance = if data.len() == 1 {
        0.0
    } else {
        data.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    };
    Ok(Summary {
        mean,
        ci95: Z95 * (variance / n).sqrt(),
        variance,
    })
}

/// The central 95% range of the data, by linear interpolation between
/// order statistics.
pub fn percentile_interval(data: &[f64]) -> Result<(f64, f64)> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let at = |q: f64| {
        let pos = q * (sorted.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
    };
    Ok((at(0.025), at(0.975)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureSelection {
    Precision,
    Recall,
    Both,
}

impl MeasureSelection {
    fn precision(self) -> bool {
        matches!(self, MeasureSelection::Precision | MeasureSelection::Both)
    }

    fn recall(self) -> bool {
        matches!(self, MeasureSelection::Recall | MeasureSelection::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorSpec {
    pub measure: MeasureSelection,
    pub sampler: LogSampler,
    /// Sample size, breeding parameters and the master seed.
    pub cfg: SamplerConfig,
    /// Replicate count.
    pub m: usize,
    /// Worker threads; results do not depend on it.
    pub workers: usize,
}

impl Default for EstimatorSpec {
    fn default() -> Self {
        EstimatorSpec {
            measure: MeasureSelection::Both,
            sampler: LogSampler::Breeding,
            cfg: SamplerConfig::default(),
            m: 100,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicateResult {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub distinct_traces: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizationEstimate {
    pub precision: Option<Summary>,
    pub recall: Option<Summary>,
    pub distinct_traces: Summary,
    pub replicates: usize,
    pub per_replicate: Vec<ReplicateResult>,
}

impl GeneralizationEstimate {
    fn from_replicates(per_replicate: Vec<ReplicateResult>) -> Result<Self> {
        let column = |f: fn(&ReplicateResult) -> Option<f64>| -> Result<Option<Summary>> {
            let data: Option<Vec<f64>> = per_replicate.iter().map(f).collect();
            data.map(|d| aggregate(&d)).transpose()
        };
        let distinct: Vec<f64> = per_replicate
            .iter()
            .map(|r| r.distinct_traces as f64)
            .collect();
        Ok(GeneralizationEstimate {
            precision: column(|r| r.precision)?,
            recall: column(|r| r.recall)?,
            distinct_traces: aggregate(&distinct)?,
            replicates: per_replicate.len(),
            per_replicate,
        })
    }

    /// Summary of the per-replicate harmonic mean of precision and recall,
    /// when both were measured.
    pub fn harmonic_mean(&self) -> Option<Summary> {
        let data: Option<Vec<f64>> = self
            .per_replicate
            .iter()
            .map(|r| {
                Some(
                    Measurement {
                        precision: r.precision?,
                        recall: r.recall?,
                    }
                    .harmonic_mean(),
                )
            })
            .collect();
        data.and_then(|d| aggregate(&d).ok())
    }
}

/// The random stream of replicate `index` under `master_seed`.
pub fn replicate_rng(master_seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index as u64);
    rng
}

/// Bootstrap estimate of the model's precision and recall with respect to
/// the system that emitted `log`.
pub fn bootstrap_generalization(
    model: &Dfa,
    log: &EventLog,
    spec: &EstimatorSpec,
) -> Result<GeneralizationEstimate> {
    if spec.m < 1 {
        return Err(Error::InvalidConfig(
            "replicate count m must be at least 1".into(),
        ));
    }
    if spec.workers < 1 {
        return Err(Error::InvalidConfig(
            "worker count must be at least 1".into(),
        ));
    }
    spec.cfg.validate()?;
    if log.is_empty() {
        return Err(Error::EmptyLog);
    }
    let prepared = PreparedModel::new(model)?;

    let run = |index: usize| -> Result<ReplicateResult> {
        let mut rng = replicate_rng(spec.cfg.seed, index);
        replicate(&prepared, log, spec, &mut rng).map_err(|e| Error::Replicate {
            index,
            source: Box::new(e),
        })
    };

    let results: Vec<Result<ReplicateResult>> = if spec.workers == 1 {
        (0..spec.m).map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.workers)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        pool.install(|| (0..spec.m).into_par_iter().map(run).collect())
    };
    let per_replicate = results.into_iter().collect::<Result<Vec<_>>>()?;
    GeneralizationEstimate::from_replicates(per_replicate)
}

fn replicate(
    model: &PreparedModel,
    log: &EventLog,
    spec: &EstimatorSpec,
    rng: &mut ChaCha8Rng,
) -> Result<ReplicateResult> {
    let sample = spec.sampler.sample(log, &spec.cfg, rng)?;
    let m = model.measure(&log_to_dfa(&sample))?;
    Ok(ReplicateResult {
        precision: spec.measure.precision().then_some(m.precision),
        recall: spec.measure.recall().then_some(m.recall),
        distinct_traces: sample.distinct(),
    })
}
