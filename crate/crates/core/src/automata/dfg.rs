use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::trace::Action;

/// A node of a directly-follows graph: the input marker, an action, or the
/// output marker.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Input,
    Action(Action),
    Output,
}

impl Node {
    /// Parses `i`, `o`, or an action name.
    pub fn parse(name: &str) -> Result<Node> {
        match name {
            "i" => Ok(Node::Input),
            "o" => Ok(Node::Output),
            other => Action::new(other).map(Node::Action),
        }
    }

    pub fn action(&self) -> Option<&Action> {
        match self {
            Node::Action(a) => Some(a),
            _ => None,
        }
    }
}

impl From<Action> for Node {
    fn from(a: Action) -> Self {
        Node::Action(a)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Input => f.write_str("i"),
            Node::Action(a) => f.write_str(a.name()),
            Node::Output => f.write_str("o"),
        }
    }
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A directly-follows graph.
///
/// Arcs run from the input marker to actions, between actions, and from
/// actions to the output marker. Nothing enters `i` and nothing leaves `o`.
/// Node and arc frequencies are carried along but do not affect the
/// language of the graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Dfg {
    node_freq: BTreeMap<Node, u64>,
    arcs: BTreeMap<(Node, Node), u64>,
}

impl Default for Dfg {
    fn default() -> Self {
        Self::new()
    }
}

impl Dfg {
    pub fn new() -> Self {
        let mut node_freq = BTreeMap::new();
        node_freq.insert(Node::Input, 0);
        node_freq.insert(Node::Output, 0);
        Dfg {
            node_freq,
            arcs: BTreeMap::new(),
        }
    }

    /// Declares an action node (if absent) and sets its frequency.
    pub fn set_node_freq(&mut self, node: Node, freq: u64) {
        self.node_freq.insert(node, freq);
    }

    pub fn add_action(&mut self, action: Action) {
        self.node_freq.entry(Node::Action(action)).or_insert(0);
    }

    /// Adds `freq` to the arc `src -> dst`, declaring unseen action endpoints.
    pub fn add_arc(&mut self, src: Node, dst: Node, freq: u64) -> Result<()> {
        let reason = match (&src, &dst) {
            (_, Node::Input) => Some("the input node has no incoming arcs"),
            (Node::Output, _) => Some("the output node has no outgoing arcs"),
            (Node::Input, Node::Output) => Some("the input node connects only to actions"),
            _ => None,
        };
        if let Some(reason) = reason {
            return Err(Error::InvalidArc {
                src: src.to_string(),
                dst: dst.to_string(),
                reason,
            });
        }
        for n in [&src, &dst] {
            if let Node::Action(a) = n {
                self.add_action(a.clone());
            }
        }
        *self.arcs.entry((src, dst)).or_insert(0) += freq;
        Ok(())
    }

    /// The action set, without the markers.
    pub fn actions(&self) -> impl Iterator<Item = &Action> {
        self.node_freq.keys().filter_map(Node::action)
    }

    /// Every node including `i` and `o`.
    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.node_freq.keys()
    }

    pub fn node_freq(&self, node: &Node) -> Option<u64> {
        self.node_freq.get(node).copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (&Node, &Node, u64)> {
        self.arcs.iter().map(|((s, t), &f)| (s, t, f))
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_freq(&self, src: &Node, dst: &Node) -> Option<u64> {
        self.arcs.get(&(src.clone(), dst.clone())).copied()
    }

    pub fn has_arc(&self, src: &Node, dst: &Node) -> bool {
        self.arc_freq(src, dst).is_some()
    }

    /// Outgoing arcs of `node` with their frequencies, in node order.
    pub fn successors<'a>(&'a self, node: &'a Node) -> impl Iterator<Item = (&'a Node, u64)> + 'a {
        self.arcs
            .range((node.clone(), Node::Input)..)
            .take_while(move |((s, _), _)| s == node)
            .map(|((_, t), &f)| (t, f))
    }

    /// Same nodes and same arcs, frequencies ignored.
    pub fn same_structure(&self, other: &Dfg) -> bool {
        self.node_freq.keys().eq(other.node_freq.keys()) && self.arcs.keys().eq(other.arcs.keys())
    }

    /// Nodes reachable from `from` by following arcs (including `from`).
    pub fn reachable_from(&self, from: &Node) -> BTreeSet<Node> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![from.clone()];
        while let Some(n) = stack.pop() {
            if !seen.insert(n.clone()) {
                continue;
            }
            for (t, _) in self.successors(&n) {
                if !seen.contains(t) {
                    stack.push(t.clone());
                }
            }
        }
        seen
    }
}

impl fmt::Debug for Dfg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dfg")
            .field("nodes", &self.node_freq)
            .field("arcs", &self.arcs)
            .finish()
    }
}
