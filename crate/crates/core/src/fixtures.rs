//! The running example shipped with the crate: a 66-trace log, the model
//! discovered from it, and a system that could have produced it.

use crate::automata::Dfg;
use crate::format::{parse_dfg, parse_log};
use crate::trace::EventLog;

pub const LOG: &str = include_str!("../fixtures/running-example.log");
pub const MODEL: &str = include_str!("../fixtures/model.dfg");
pub const SYSTEM: &str = include_str!("../fixtures/system.dfg");

pub fn log() -> EventLog {
    parse_log(LOG).expect("bundled log parses")
}

pub fn model() -> Dfg {
    parse_dfg(MODEL).expect("bundled model parses")
}

pub fn system() -> Dfg {
    parse_dfg(SYSTEM).expect("bundled system parses")
}
