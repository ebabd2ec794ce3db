use std::collections::BTreeMap;

use super::dfa::Dfa;
use crate::error::{Error, Result};

/// A directed multigraph stored as sparse rows of `(target, multiplicity)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    rows: Vec<Vec<(usize, u32)>>,
    start: usize,
}

impl WeightedDigraph {
    /// Builds a graph from an edge list; repeated edges raise the multiplicity.
    pub fn from_edges(nodes: usize, start: usize, edges: &[(usize, usize)]) -> Self {
        let mut rows: Vec<BTreeMap<usize, u32>> = vec![BTreeMap::new(); nodes];
        for &(s, t) in edges {
            *rows[s].entry(t).or_insert(0) += 1;
        }
        WeightedDigraph {
            rows: rows.into_iter().map(|r| r.into_iter().collect()).collect(),
            start,
        }
    }

    pub fn node_count(&self) -> usize {
        self.rows.len()
    }

    /// Edge count, with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .flat_map(|r| r.iter().map(|&(_, m)| m as usize))
            .sum()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn multiplicity(&self, from: usize, to: usize) -> u32 {
        self.rows[from]
            .iter()
            .find(|&&(t, _)| t == to)
            .map_or(0, |&(_, m)| m)
    }

    pub fn row(&self, from: usize) -> &[(usize, u32)] {
        &self.rows[from]
    }

    /// `y = A x` for the adjacency matrix `A`, reading rows as sources and
    /// accumulating into targets (`y_t += m * x_s`).
    pub(crate) fn push_forward(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (s, row) in self.rows.iter().enumerate() {
            let xs = x[s];
            if xs == 0.0 {
                continue;
            }
            for &(t, m) in row {
                y[t] += m as f64 * xs;
            }
        }
    }
}

/// The short-circuited graph of an automaton's trace language.
///
/// The automaton is brought to the trace level and trimmed, then every
/// transition becomes an edge and every accepting state gains one return
/// edge to the start state. The result is strongly connected.
pub fn short_circuit(a: &Dfa) -> Result<WeightedDigraph> {
    let a = a.to_trace_level().trim();
    if a.accepting_states().next().is_none() {
        return Err(Error::EmptyLanguage);
    }
    let mut edges: Vec<(usize, usize)> = a.transitions().map(|(s, _, t)| (s, t)).collect();
    edges.extend(a.accepting_states().map(|q| (q, a.start())));
    Ok(WeightedDigraph::from_edges(
        a.state_count(),
        a.start(),
        &edges,
    ))
}
