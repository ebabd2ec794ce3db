//! Plain-text file formats.
//!
//! Logs hold one entry per line, `<count> <action> <action> ...`:
//!
//! ```text
//! # the running example
//! 20 a b c f
//! 10 a d e e f
//! ```
//!
//! Directly-follows graphs hold `node <name> <freq>` and
//! `edge <src> <dst> <freq>` records, with `i` and `o` naming the input and
//! output markers:
//!
//! ```text
//! node a 66
//! edge i a 66
//! edge a o 66
//! ```
//!
//! In both formats blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::automata::{Dfg, Node};
use crate::error::{Error, Result};
use crate::trace::{Action, EventLog, Trace};

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn count(line: usize, field: &str, what: &str) -> Result<u64> {
    field.parse::<u64>().map_err(|_| {
        Error::parse(
            line,
            format!("{what} {field:?} is not a non-negative integer"),
        )
    })
}

pub fn parse_log(text: &str) -> Result<EventLog> {
    let mut log = EventLog::new();
    for (line, fields) in records(text) {
        let c = count(line, fields[0], "count")?;
        if c == 0 {
            return Err(Error::parse(line, "count must be positive"));
        }
        let trace = fields[1..]
            .iter()
            .map(|name| Action::new(name).map_err(|e| Error::parse(line, e.to_string())))
            .collect::<Result<Trace>>()?;
        log.insert(trace, c);
    }
    Ok(log)
}

pub fn write_log(log: &EventLog) -> String {
    let mut out = String::new();
    for (trace, c) in log.iter() {
        if trace.is_empty() {
            writeln!(out, "{c}").unwrap();
        } else {
            writeln!(out, "{c} {trace}").unwrap();
        }
    }
    out
}

pub fn parse_dfg(text: &str) -> Result<Dfg> {
    let mut g = Dfg::new();
    for (line, fields) in records(text) {
        let node = |name: &str| Node::parse(name).map_err(|e| Error::parse(line, e.to_string()));
        match fields.as_slice() {
            ["node", name, freq] => {
                let freq = count(line, freq, "frequency")?;
                g.set_node_freq(node(name)?, freq);
            }
            ["edge", src, dst, freq] => {
                let freq = count(line, freq, "frequency")?;
                g.add_arc(node(src)?, node(dst)?, freq)
                    .map_err(|e| Error::parse(line, e.to_string()))?;
            }
            _ => {
                return Err(Error::parse(
                    line,
                    "expected `node <name> <freq>` or `edge <src> <dst> <freq>`",
                ))
            }
        }
    }
    Ok(g)
}

pub fn write_dfg(g: &Dfg) -> String {
    let mut out = String::new();
    for n in g.nodes() {
        writeln!(out, "node {n} {}", g.node_freq(n).unwrap_or(0)).unwrap();
    }
    for (s, t, f) in g.arcs() {
        writeln!(out, "edge {s} {t} {f}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_with_comments_and_blanks() {
        let log = parse_log("# header\n\n20 a b c f\n  1 a d d e f  \n").unwrap();
        assert_eq!(log.size(), 21);
        assert_eq!(log.distinct(), 2);
        assert_eq!(write_log(&log), "20 a b c f\n1 a d d e f\n");
    }

    #[test]
    fn log_parse_errors_name_the_line() {
        assert_eq!(
            parse_log("1 a\nx a b\n"),
            Err(Error::parse(2, "count \"x\" is not a non-negative integer"))
        );
        assert!(matches!(
            parse_log("0 a"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_log("\n\n3 a o"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn empty_trace_lines() {
        let log = parse_log("4\n").unwrap();
        assert_eq!(log.multiplicity(&Trace::empty()), 4);
        assert_eq!(write_log(&log), "4\n");
    }

    #[test]
    fn dfg_round_trip() {
        let text = "node i 3\nnode a 3\nnode o 3\nedge i a 3\nedge a o 3\n";
        let g = parse_dfg(text).unwrap();
        assert_eq!(write_dfg(&g), text);
        assert_eq!(parse_dfg(&write_dfg(&g)).unwrap(), g);
    }

    #[test]
    fn dfg_parse_errors() {
        assert!(matches!(
            parse_dfg("edge a i 1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dfg("node a"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dfg("arc a b 1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dfg("# c\nedge a b -1"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
