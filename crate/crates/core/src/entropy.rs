//! Topological entropy of regular languages and the entropy-based
//! model-system precision and recall.
//!
//! The entropy of a language is `ln ρ`, where `ρ` is the spectral radius of
//! the adjacency matrix of its short-circuited minimal automaton. Short
//! circuiting makes the graph strongly connected, so `ρ ≥ 1` for every
//! non-empty language.
//!
//! Precision and recall compare the spectral radii directly:
//!
//! ```text
//! precision(M, S) = ρ(M ∩ S) / ρ(M)
//! recall(M, S)    = ρ(M ∩ S) / ρ(S)
//! ```
//!
//! Both lie in `[0, 1]` because `ρ` is monotone under language inclusion.
//! An empty intersection scores `0`.

use crate::automata::{intersect, short_circuit, Dfa, WeightedDigraph};
use crate::error::{Error, Result};

/// Stopping rule for power iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIteration {
    /// Absolute change of the Rayleigh quotient between iterations.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for PowerIteration {
    fn default() -> Self {
        PowerIteration {
            tolerance: 1e-12,
            max_iterations: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue {
    /// `ln ρ`, in nats.
    pub value: f64,
    pub spectral_radius: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl EntropyValue {
    /// The entropy measured with logarithm base `base`.
    pub fn in_base(&self, base: f64) -> f64 {
        self.value / base.ln()
    }
}

/// Dominant eigenvalue of the adjacency matrix of a strongly connected
/// graph.
///
/// Iterates on `A + I`, which has the same Perron vector as `A` but is
/// aperiodic, so the iteration also converges on cyclic graphs. The start
/// vector is all ones.
pub fn spectral_radius(g: &WeightedDigraph, opts: PowerIteration) -> Result<(f64, usize)> {
    let n = g.node_count();
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    let mut previous = f64::NAN;
    for iteration in 1..=opts.max_iterations {
        g.push_forward(&x, &mut y);
        let mut dot = 0.0;
        let mut norm = 0.0;
        let mut max = 0.0f64;
        for i in 0..n {
            y[i] += x[i];
            dot += x[i] * y[i];
            norm += x[i] * x[i];
            max = max.max(y[i]);
        }
        let quotient = dot / norm;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / max;
        }
        if (quotient - previous).abs() < opts.tolerance {
            return Ok((quotient - 1.0, iteration));
        }
        previous = quotient;
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iterations,
    })
}

pub fn topological_entropy(a: &Dfa) -> Result<EntropyValue> {
    topological_entropy_with(a, PowerIteration::default())
}

pub fn topological_entropy_with(a: &Dfa, opts: PowerIteration) -> Result<EntropyValue> {
    let g = short_circuit(&a.to_trace_level().minimize())?;
    let (rho, iterations) = spectral_radius(&g, opts)?;
    Ok(EntropyValue {
        value: rho.ln().max(0.0),
        spectral_radius: rho,
        converged: true,
        iterations,
    })
}

/// Finite-horizon growth estimate `ln C(h) / h`, where `C(h)` counts the
/// walks of length `h` that leave the start node of the short-circuited
/// graph. Counted by dynamic programming with per-step rescaling, so large
/// horizons do not overflow.
pub fn growth_oracle(a: &Dfa, horizon: usize) -> Result<f64> {
    let g = short_circuit(a)?;
    Ok(growth_rate(&g, horizon))
}

pub fn growth_rate(g: &WeightedDigraph, horizon: usize) -> f64 {
    assert!(horizon > 0, "horizon must be positive");
    let mut x = vec![0.0; g.node_count()];
    let mut y = vec![0.0; g.node_count()];
    x[g.start()] = 1.0;
    let mut log_count = 0.0;
    for _ in 0..horizon {
        g.push_forward(&x, &mut y);
        let total: f64 = y.iter().sum();
        log_count += total.ln();
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / total;
        }
    }
    log_count / horizon as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub precision: f64,
    pub recall: f64,
}

impl Measurement {
    /// Harmonic mean of precision and recall; zero when both are zero.
    pub fn harmonic_mean(&self) -> f64 {
        let sum = self.precision + self.recall;
        if sum == 0.0 {
            0.0
        } else {
            2.0 * self.precision * self.recall / sum
        }
    }
}

/// A model automaton with its spectral radius computed once, for repeated
/// comparison against many systems or replicate logs.
#[derive(Debug, Clone)]
pub struct PreparedModel {
    dfa: Dfa,
    radius: f64,
}

impl PreparedModel {
    pub fn new(model: &Dfa) -> Result<Self> {
        let dfa = model.to_trace_level().minimize();
        let radius = radius_of(&dfa)?;
        Ok(PreparedModel { dfa, radius })
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn spectral_radius(&self) -> f64 {
        self.radius
    }

    pub fn measure(&self, system: &Dfa) -> Result<Measurement> {
        let system = system.to_trace_level().minimize();
        let system_radius = radius_of(&system)?;
        let both = intersect(&self.dfa, &system);
        let shared = if both.is_empty_language() {
            0.0
        } else {
            radius_of(&both)?
        };
        Ok(Measurement {
            precision: ratio(shared, self.radius)?,
            recall: ratio(shared, system_radius)?,
        })
    }
}

fn radius_of(a: &Dfa) -> Result<f64> {
    topological_entropy(a).map(|e| e.spectral_radius)
}

fn ratio(shared: f64, whole: f64) -> Result<f64> {
    if whole <= 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok((shared / whole).clamp(0.0, 1.0))
}

/// Precision and recall of `model` against `system` in one pass.
pub fn measure(model: &Dfa, system: &Dfa) -> Result<Measurement> {
    PreparedModel::new(model)?.measure(system)
}

/// `ρ(M ∩ S) / ρ(M)`: the share of the model's behavior the system exhibits.
pub fn model_system_precision(model: &Dfa, system: &Dfa) -> Result<f64> {
    measure(model, system).map(|m| m.precision)
}

/// `ρ(M ∩ S) / ρ(S)`: the share of the system's behavior the model covers.
pub fn model_system_recall(model: &Dfa, system: &Dfa) -> Result<f64> {
    measure(model, system).map(|m| m.recall)
}
