//! Bootstrap estimation of how well a discovered process model generalizes
//! to the unknown system behind an event log.
//!
//! The pieces, bottom up:
//!
//! - [`trace`]: actions, traces and event logs (multisets of traces).
//! - [`automata`]: directly-follows graphs, deterministic automata, product
//!   intersection and minimization.
//! - [`entropy`]: topological entropy of regular languages, and the
//!   model-system precision and recall built on it.
//! - [`sampling`]: replicate logs by resampling or by crossover breeding.
//! - [`bootstrap`]: the replicate loop and its aggregate statistics.
//! - [`discovery`]: a baseline DFG miner and a random-walk log simulator.
//! - [`format`]: the plain-text log and DFG file formats.
//! - [`experiment`]: the two-panel parameter sweep over the running example.
//!
//! ```
//! use bootgen::{automata::dfg_to_dfa, entropy::measure, fixtures};
//!
//! let model = dfg_to_dfa(&fixtures::model());
//! let system = dfg_to_dfa(&fixtures::system());
//! let m = measure(&model, &system).unwrap();
//! assert!((m.precision - 0.867).abs() < 0.002);
//! assert!((m.recall - 0.867).abs() < 0.002);
//! ```

pub mod automata;
pub mod bootstrap;
pub mod discovery;
pub mod entropy;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod format;
pub mod sampling;
pub mod trace;

pub use error::{Error, Result};
pub use trace::{Action, EventLog, Trace};
