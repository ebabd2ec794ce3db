//! Directly-follows graphs, deterministic automata and the operations that
//! connect them: DFG semantics, acceptance, product intersection,
//! minimization, and the short-circuit graph used for entropy.

mod dfa;
mod dfg;
mod digraph;

pub use dfa::{dfg_to_dfa, intersect, log_to_dfa, prefix_tree, Dfa, DfaBuilder, Label, StateId};
pub use dfg::{Dfg, Node};
pub use digraph::{short_circuit, WeightedDigraph};
