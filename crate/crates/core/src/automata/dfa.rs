use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use super::dfg::{Dfg, Node};
use crate::error::{Error, Result};
use crate::trace::{Action, EventLog, Trace};

pub type StateId = usize;

/// A transition label: an action, or the output marker `o` that closes every
/// word of a DFG-derived automaton.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Action(Action),
    Output,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Action(a) => f.write_str(a.name()),
            Label::Output => f.write_str("o"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Action> for Label {
    fn from(a: Action) -> Self {
        Label::Action(a)
    }
}

/// A deterministic finite automaton with a partial transition function.
///
/// When `output_terminated` is set, the automaton's words end with the
/// output marker and [`Dfa::accepts`] appends that step to the trace it is
/// given. Automata built from directly-follows graphs carry the flag;
/// automata built from logs do not.
#[derive(Clone, PartialEq, Eq)]
pub struct Dfa {
    delta: Vec<BTreeMap<Label, StateId>>,
    accepting: Vec<bool>,
    start: StateId,
    alphabet: BTreeSet<Label>,
    output_terminated: bool,
}

/// Incremental construction of a [`Dfa`].
#[derive(Debug, Clone)]
pub struct DfaBuilder {
    delta: Vec<BTreeMap<Label, StateId>>,
    accepting: Vec<bool>,
    alphabet: BTreeSet<Label>,
    output_terminated: bool,
}

impl DfaBuilder {
    /// A builder holding one state, the start state `0`.
    pub fn new() -> Self {
        DfaBuilder {
            delta: vec![BTreeMap::new()],
            accepting: vec![false],
            alphabet: BTreeSet::new(),
            output_terminated: false,
        }
    }

    pub fn output_terminated(mut self, yes: bool) -> Self {
        self.output_terminated = yes;
        self
    }

    pub fn add_state(&mut self) -> StateId {
        self.delta.push(BTreeMap::new());
        self.accepting.push(false);
        self.delta.len() - 1
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn add_symbol(&mut self, label: Label) {
        self.alphabet.insert(label);
    }

    pub fn set_accepting(&mut self, state: StateId, accepting: bool) {
        self.accepting[state] = accepting;
    }

    pub fn add_transition(&mut self, from: StateId, label: Label, to: StateId) -> Result<()> {
        assert!(
            from < self.delta.len() && to < self.delta.len(),
            "unknown state"
        );
        match self.delta[from].get(&label) {
            Some(&existing) if existing != to => Err(Error::Nondeterministic {
                state: from,
                label: label.to_string(),
            }),
            _ => {
                self.alphabet.insert(label.clone());
                self.delta[from].insert(label, to);
                Ok(())
            }
        }
    }

    /// Target of `label` from `from`, creating a fresh state when absent.
    pub fn step_or_insert(&mut self, from: StateId, label: Label) -> StateId {
        if let Some(&t) = self.delta[from].get(&label) {
            return t;
        }
        let t = self.add_state();
        self.alphabet.insert(label.clone());
        self.delta[from].insert(label, t);
        t
    }

    pub fn build(self) -> Dfa {
        Dfa {
            delta: self.delta,
            accepting: self.accepting,
            start: 0,
            alphabet: self.alphabet,
            output_terminated: self.output_terminated,
        }
    }
}

impl Default for DfaBuilder {
    fn default() -> Self {
        Self::new()
    }
}

type Signature<'a> = Vec<(&'a Label, usize)>;

impl Dfa {
    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.state_count()).filter(|&q| self.accepting[q])
    }

    pub fn alphabet(&self) -> &BTreeSet<Label> {
        &self.alphabet
    }

    pub fn output_terminated(&self) -> bool {
        self.output_terminated
    }

    pub fn step(&self, q: StateId, label: &Label) -> Option<StateId> {
        self.delta[q].get(label).copied()
    }

    pub fn transitions_from(&self, q: StateId) -> impl Iterator<Item = (&Label, StateId)> {
        self.delta[q].iter().map(|(l, &t)| (l, t))
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, &Label, StateId)> {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(q, m)| m.iter().map(move |(l, &t)| (q, l, t)))
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().map(BTreeMap::len).sum()
    }

    /// Runs a raw label word from the start state.
    pub fn accepts_word<'a, I>(&self, word: I) -> bool
    where
        I: IntoIterator<Item = &'a Label>,
    {
        let mut q = self.start;
        for l in word {
            match self.step(q, l) {
                Some(t) => q = t,
                None => return false,
            }
        }
        self.accepting[q]
    }

    /// Accepts a system-level trace, appending the output step when the
    /// automaton is output-terminated. Unknown actions reject.
    pub fn accepts(&self, trace: &Trace) -> bool {
        let mut q = self.start;
        for a in trace {
            match self.delta[q].get(&Label::Action(a.clone())) {
                Some(&t) => q = t,
                None => return false,
            }
        }
        if self.output_terminated {
            match self.step(q, &Label::Output) {
                Some(t) => q = t,
                None => return false,
            }
        }
        self.accepting[q]
    }

    /// Every label leads to a single target state, whatever the source.
    pub fn is_stable(&self) -> bool {
        let mut target: HashMap<&Label, StateId> = HashMap::new();
        for (_, l, t) in self.transitions() {
            if *target.entry(l).or_insert(t) != t {
                return false;
            }
        }
        true
    }

    pub fn is_empty_language(&self) -> bool {
        let trimmed = self.trim();
        !trimmed.accepting[trimmed.start] && trimmed.delta[trimmed.start].is_empty()
    }

    /// Keeps only states that are reachable from the start and can reach an
    /// accepting state. States are renumbered in breadth-first order from
    /// the start. An empty language yields a lone non-accepting start state.
    pub fn trim(&self) -> Dfa {
        let n = self.state_count();
        let mut reverse: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (q, _, t) in self.transitions() {
            reverse[t].push(q);
        }
        let mut live = vec![false; n];
        let mut stack: Vec<StateId> = self.accepting_states().collect();
        for &q in &stack {
            live[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &reverse[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }

        let mut builder = DfaBuilder::new().output_terminated(self.output_terminated);
        builder.alphabet = self.alphabet.clone();
        if !live[self.start] {
            return builder.build();
        }
        let mut index: Vec<Option<StateId>> = vec![None; n];
        index[self.start] = Some(0);
        builder.set_accepting(0, self.accepting[self.start]);
        let mut queue = VecDeque::from([self.start]);
        while let Some(q) = queue.pop_front() {
            let from = index[q].unwrap();
            for (l, t) in self.transitions_from(q) {
                if !live[t] {
                    continue;
                }
                let to = match index[t] {
                    Some(i) => i,
                    None => {
                        let i = builder.add_state();
                        builder.set_accepting(i, self.accepting[t]);
                        index[t] = Some(i);
                        queue.push_back(t);
                        i
                    }
                };
                builder.delta[from].insert(l.clone(), to);
            }
        }
        builder.build()
    }

    /// The minimal trimmed automaton for the same language, by Moore-style
    /// partition refinement. Missing transitions act as an implicit dead
    /// state.
    pub fn minimize(&self) -> Dfa {
        let dfa = self.trim();
        let n = dfa.state_count();
        let mut class: Vec<usize> = dfa.accepting.iter().map(|&a| a as usize).collect();
        let mut class_count = class.iter().copied().collect::<BTreeSet<_>>().len();
        loop {
            // (current class, successor classes) -> refined class
            let mut ids: HashMap<(usize, Signature), usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let signature: Signature =
                    dfa.delta[q].iter().map(|(l, &t)| (l, class[t])).collect();
                let fresh = ids.len();
                next[q] = *ids.entry((class[q], signature)).or_insert(fresh);
            }
            let refined = ids.len();
            class = next;
            if refined == class_count {
                break;
            }
            class_count = refined;
        }

        let mut delta = vec![BTreeMap::new(); class_count];
        let mut accepting = vec![false; class_count];
        for q in 0..n {
            accepting[class[q]] = dfa.accepting[q];
            for (l, t) in dfa.transitions_from(q) {
                delta[class[q]].insert(l.clone(), class[t]);
            }
        }
        Dfa {
            delta,
            accepting,
            start: class[dfa.start],
            alphabet: dfa.alphabet.clone(),
            output_terminated: dfa.output_terminated,
        }
        .trim()
    }

    /// The same trace language without the output marker: a state accepts
    /// when its output step leads to acceptance, and output transitions are
    /// dropped.
    pub fn to_trace_level(&self) -> Dfa {
        if !self.output_terminated {
            return self.clone();
        }
        let accepting = (0..self.state_count())
            .map(|q| matches!(self.step(q, &Label::Output), Some(t) if self.accepting[t]))
            .collect();
        let delta = self
            .delta
            .iter()
            .map(|m| {
                m.iter()
                    .filter(|(l, _)| **l != Label::Output)
                    .map(|(l, &t)| (l.clone(), t))
                    .collect()
            })
            .collect();
        let mut alphabet = self.alphabet.clone();
        alphabet.remove(&Label::Output);
        Dfa {
            delta,
            accepting,
            start: self.start,
            alphabet,
            output_terminated: false,
        }
    }

    /// The same trace language over output-terminated words: one fresh
    /// accepting state entered by an output step from every former
    /// accepting state.
    pub fn with_output_marker(&self) -> Dfa {
        if self.output_terminated {
            return self.clone();
        }
        let mut delta = self.delta.clone();
        let sink = delta.len();
        delta.push(BTreeMap::new());
        for q in self.accepting_states() {
            delta[q].insert(Label::Output, sink);
        }
        let mut accepting = vec![false; delta.len()];
        accepting[sink] = true;
        let mut alphabet = self.alphabet.clone();
        alphabet.insert(Label::Output);
        Dfa {
            delta,
            accepting,
            start: self.start,
            alphabet,
            output_terminated: true,
        }
    }
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Dfa(start={}, states={}, output_terminated={})",
            self.start,
            self.state_count(),
            self.output_terminated
        )?;
        for q in 0..self.state_count() {
            write!(f, "  {q}{}:", if self.accepting[q] { "*" } else { "" })?;
            for (l, t) in self.transitions_from(q) {
                write!(f, " {l}->{t}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The automaton of a directly-follows graph: one state per node, a
/// transition `s --t--> t` for every arc `(s, t)`, start `i`, accepting `{o}`.
pub fn dfg_to_dfa(g: &Dfg) -> Dfa {
    let index: BTreeMap<&Node, StateId> = g.nodes().enumerate().map(|(i, n)| (n, i)).collect();
    let mut delta = vec![BTreeMap::new(); index.len()];
    let mut accepting = vec![false; index.len()];
    accepting[index[&Node::Output]] = true;
    let mut alphabet: BTreeSet<Label> = g.actions().cloned().map(Label::Action).collect();
    alphabet.insert(Label::Output);
    for (s, t, _) in g.arcs() {
        let label = match t {
            Node::Action(a) => Label::Action(a.clone()),
            Node::Output => Label::Output,
            Node::Input => unreachable!("arcs never enter the input node"),
        };
        delta[index[s]].insert(label, index[t]);
    }
    Dfa {
        delta,
        accepting,
        start: index[&Node::Input],
        alphabet,
        output_terminated: true,
    }
}

/// The minimal automaton whose language is exactly the support of `log`.
/// Multiplicities are discarded.
pub fn log_to_dfa(log: &EventLog) -> Dfa {
    prefix_tree(log.support()).minimize()
}

/// The prefix-tree acceptor of a set of traces, before minimization.
pub fn prefix_tree<'a, I>(traces: I) -> Dfa
where
    I: IntoIterator<Item = &'a Trace>,
{
    let mut b = DfaBuilder::new();
    for t in traces {
        let mut q = 0;
        for a in t {
            q = b.step_or_insert(q, Label::Action(a.clone()));
        }
        b.set_accepting(q, true);
    }
    b.build()
}

/// Product automaton over the union alphabet, trimmed.
///
/// If exactly one operand is output-terminated it is first brought to the
/// trace level, so both sides speak the same word convention.
pub fn intersect(a: &Dfa, b: &Dfa) -> Dfa {
    let (a, b) = match (a.output_terminated, b.output_terminated) {
        (true, false) => (a.to_trace_level(), b.clone()),
        (false, true) => (a.clone(), b.to_trace_level()),
        _ => (a.clone(), b.clone()),
    };
    let mut builder = DfaBuilder::new().output_terminated(a.output_terminated);
    builder.alphabet = a.alphabet.union(&b.alphabet).cloned().collect();
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    index.insert((a.start, b.start), 0);
    builder.set_accepting(0, a.accepting[a.start] && b.accepting[b.start]);
    let mut queue = VecDeque::from([(a.start, b.start)]);
    while let Some((qa, qb)) = queue.pop_front() {
        let from = index[&(qa, qb)];
        // Walk the smaller transition map.
        let pairs: Vec<(&Label, StateId, StateId)> = if a.delta[qa].len() <= b.delta[qb].len() {
            a.transitions_from(qa)
                .filter_map(|(l, ta)| b.step(qb, l).map(|tb| (l, ta, tb)))
                .collect()
        } else {
            b.transitions_from(qb)
                .filter_map(|(l, tb)| a.step(qa, l).map(|ta| (l, ta, tb)))
                .collect()
        };
        for (l, ta, tb) in pairs {
            let to = match index.get(&(ta, tb)) {
                Some(&i) => i,
                None => {
                    let i = builder.add_state();
                    builder.set_accepting(i, a.accepting[ta] && b.accepting[tb]);
                    index.insert((ta, tb), i);
                    queue.push_back((ta, tb));
                    i
                }
            };
            builder.delta[from].insert(l.clone(), to);
        }
    }
    builder.build().trim()
}
