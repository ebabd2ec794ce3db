//! A baseline directly-follows discovery algorithm and a random-walk log
//! simulator for directly-follows graphs.

use std::collections::BTreeMap;

use rand::Rng;

use crate::automata::{Dfg, Node};
use crate::error::{Error, Result};
use crate::trace::{EventLog, Trace};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscoveryConfig {
    /// Fraction of the distinct traces, least frequent first, dropped before
    /// building the graph.
    pub filter_fraction: f64,
}

impl Default for DiscoveryConfig {
    fn default() -> Self {
        DiscoveryConfig {
            filter_fraction: 0.0,
        }
    }
}

/// Builds a directly-follows graph from the frequent part of a log.
///
/// The `⌊filter_fraction · |support|⌋` least frequent distinct traces are
/// dropped first. Among traces of equal frequency the lexicographically
/// larger one is dropped first. Each remaining action becomes a node,
/// each adjacent pair an arc, and `i`/`o` connect to first and last
/// actions. Frequencies count occurrences in the remaining traces.
pub fn discover_dfg(log: &EventLog, cfg: &DiscoveryConfig) -> Result<Dfg> {
    if log.is_empty() {
        return Err(Error::EmptyLog);
    }
    if !(0.0..1.0).contains(&cfg.filter_fraction) {
        return Err(Error::InvalidConfig(
            "filter fraction must lie in [0, 1)".into(),
        ));
    }
    let mut ranked: Vec<(&Trace, u64)> = log.iter().collect();
    ranked.sort_by(|(ta, ca), (tb, cb)| ca.cmp(cb).then_with(|| tb.cmp(ta)));
    let dropped = (cfg.filter_fraction * ranked.len() as f64).floor() as usize;
    let kept = &ranked[dropped..];

    let mut g = Dfg::new();
    let mut node_freq: BTreeMap<Node, u64> = BTreeMap::new();
    let mut any = false;
    for &(trace, count) in kept {
        let Some(first) = trace.actions().first() else {
            continue;
        };
        any = true;
        *node_freq.entry(Node::Input).or_insert(0) += count;
        *node_freq.entry(Node::Output).or_insert(0) += count;
        for a in trace {
            *node_freq.entry(Node::Action(a.clone())).or_insert(0) += count;
        }
        g.add_arc(Node::Input, first.clone().into(), count)?;
        for pair in trace.actions().windows(2) {
            g.add_arc(pair[0].clone().into(), pair[1].clone().into(), count)?;
        }
        let last = trace.actions().last().expect("non-empty");
        g.add_arc(last.clone().into(), Node::Output, count)?;
    }
    if !any {
        return Err(Error::AllFiltered);
    }
    for (node, freq) in node_freq {
        g.set_node_freq(node, freq);
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    /// Every outgoing arc equally likely.
    Uniform,
    /// Outgoing arcs weighted by their frequencies.
    Frequency,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkConfig {
    pub trace_count: usize,
    /// Walks producing more actions than this are discarded and redrawn.
    pub max_length: usize,
    pub weighting: Weighting,
    pub seed: u64,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            trace_count: 100,
            max_length: 1000,
            weighting: Weighting::Uniform,
            seed: 0,
        }
    }
}

/// Consecutive over-long walks tolerated before giving up.
pub const MAX_RETRIES: usize = 1000;

/// Generates a log by random walks from `i` to `o`.
pub fn simulate_log<R: Rng>(g: &Dfg, cfg: &WalkConfig, rng: &mut R) -> Result<EventLog> {
    if cfg.trace_count < 1 || cfg.max_length < 1 {
        return Err(Error::InvalidConfig(
            "trace count and maximum length must be at least 1".into(),
        ));
    }
    if !g.reachable_from(&Node::Input).contains(&Node::Output) {
        return Err(Error::Unreachable);
    }
    let successors: BTreeMap<&Node, Vec<(&Node, u64)>> =
        g.nodes().map(|n| (n, g.successors(n).collect())).collect();

    let mut log = EventLog::new();
    let mut failures = 0;
    while log.size() < cfg.trace_count as u64 {
        match walk(&successors, cfg, rng) {
            Some(trace) => {
                failures = 0;
                log.insert(trace, 1);
            }
            None => {
                failures += 1;
                if failures >= MAX_RETRIES {
                    return Err(Error::RetryExhausted {
                        attempts: failures,
                        max_length: cfg.max_length,
                    });
                }
            }
        }
    }
    Ok(log)
}

fn walk<R: Rng>(
    successors: &BTreeMap<&Node, Vec<(&Node, u64)>>,
    cfg: &WalkConfig,
    rng: &mut R,
) -> Option<Trace> {
    let mut actions = Vec::new();
    let mut at = &Node::Input;
    loop {
        let next = choose(&successors[at], cfg.weighting, rng)?;
        match next {
            Node::Output => return Some(Trace::new(actions)),
            Node::Action(a) => {
                if actions.len() == cfg.max_length {
                    return None;
                }
                actions.push(a.clone());
            }
            Node::Input => unreachable!("arcs never enter the input node"),
        }
        at = next;
    }
}

fn choose<'a, R: Rng>(
    options: &[(&'a Node, u64)],
    weighting: Weighting,
    rng: &mut R,
) -> Option<&'a Node> {
    if options.is_empty() {
        return None;
    }
    let total: u64 = options.iter().map(|&(_, w)| w).sum();
    if weighting == Weighting::Uniform || total == 0 {
        return Some(options[rng.gen_range(0..options.len())].0);
    }
    let mut u = rng.gen_range(0..total);
    for &(n, w) in options {
        if u < w {
            return Some(n);
        }
        u -= w;
    }
    unreachable!("draw below the total weight")
}
