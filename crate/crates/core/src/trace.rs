//! Actions, traces and event logs.
//!
//! Positions are 1-indexed in every public operation: `subtrace(t, 2, 2)`
//! of `a b b b c f` is `b b`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Names reserved for the input and output markers of a directly-follows graph.
pub const RESERVED: [&str; 2] = ["i", "o"];

/// An opaque action label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action(Arc<str>);

impl Action {
    pub fn new(name: &str) -> Result<Self> {
        if name.is_empty() || name.chars().any(char::is_whitespace) || RESERVED.contains(&name) {
            return Err(Error::InvalidAction(name.to_string()));
        }
        Ok(Action(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite sequence of actions. The empty trace is allowed.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trace(Vec<Action>);

impl Trace {
    pub fn new(actions: Vec<Action>) -> Self {
        Trace(actions)
    }

    pub fn empty() -> Self {
        Trace(Vec::new())
    }

    /// Parses whitespace-separated action names: `"a b c"`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split_whitespace().map(Action::new).collect()
    }

    /// Builds a trace with one action per character: `"abc"` is `a b c`.
    pub fn from_letters(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| Action::new(c.encode_utf8(&mut [0; 4])))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn actions(&self) -> &[Action] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Action> {
        self.0.iter()
    }

    /// The `n` actions starting at 1-indexed position `p`.
    pub fn subtrace(&self, p: usize, n: usize) -> Result<Trace> {
        if p < 1 || p + n - 1 > self.len() {
            return Err(Error::OutOfBounds {
                what: format!("subtrace at position {p} of length {n}"),
                len: self.len(),
            });
        }
        Ok(Trace(self.0[p - 1..p - 1 + n].to_vec()))
    }

    /// Actions `1..=x`; `prefix(0)` is the empty trace.
    pub fn prefix(&self, x: usize) -> Result<Trace> {
        if x > self.len() {
            return Err(Error::OutOfBounds {
                what: format!("prefix up to position {x}"),
                len: self.len(),
            });
        }
        Ok(Trace(self.0[..x].to_vec()))
    }

    /// Actions `x..=len`; `suffix(len + 1)` is the empty trace.
    pub fn suffix(&self, x: usize) -> Result<Trace> {
        if x < 1 || x > self.len() + 1 {
            return Err(Error::OutOfBounds {
                what: format!("suffix from position {x}"),
                len: self.len(),
            });
        }
        Ok(Trace(self.0[x - 1..].to_vec()))
    }

    pub fn concat(&self, other: &Trace) -> Trace {
        let mut actions = Vec::with_capacity(self.len() + other.len());
        actions.extend_from_slice(&self.0);
        actions.extend_from_slice(&other.0);
        Trace(actions)
    }
}

impl FromIterator<Action> for Trace {
    fn from_iter<I: IntoIterator<Item = Action>>(iter: I) -> Self {
        Trace(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Trace {
    type Item = &'a Action;
    type IntoIter = std::slice::Iter<'a, Action>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(a.name())?;
        }
        Ok(())
    }
}

/// A finite multiset of traces.
///
/// Iteration order is the lexicographic order of traces, which keeps every
/// consumer of a log deterministic.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct EventLog {
    entries: BTreeMap<Trace, u64>,
    size: u64,
}

impl EventLog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` occurrences of `trace`. A zero count is a no-op.
    pub fn insert(&mut self, trace: Trace, count: u64) {
        if count == 0 {
            return;
        }
        *self.entries.entry(trace).or_insert(0) += count;
        self.size += count;
    }

    /// Total number of traces, counting multiplicity.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Number of distinct traces, `|support(L)|`.
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn multiplicity(&self, trace: &Trace) -> u64 {
        self.entries.get(trace).copied().unwrap_or(0)
    }

    pub fn contains(&self, trace: &Trace) -> bool {
        self.entries.contains_key(trace)
    }

    pub fn support(&self) -> impl Iterator<Item = &Trace> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Trace, u64)> {
        self.entries.iter().map(|(t, &c)| (t, c))
    }

    /// Multiset union: multiplicities add.
    pub fn concat(&self, other: &EventLog) -> EventLog {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn extend_from(&mut self, other: &EventLog) {
        for (t, c) in other.iter() {
            self.insert(t.clone(), c);
        }
    }
}

impl FromIterator<Trace> for EventLog {
    fn from_iter<I: IntoIterator<Item = Trace>>(iter: I) -> Self {
        let mut log = EventLog::new();
        for t in iter {
            log.insert(t, 1);
        }
        log
    }
}

impl FromIterator<(Trace, u64)> for EventLog {
    fn from_iter<I: IntoIterator<Item = (Trace, u64)>>(iter: I) -> Self {
        let mut log = EventLog::new();
        for (t, c) in iter {
            log.insert(t, c);
        }
        log
    }
}

impl fmt::Debug for EventLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}
