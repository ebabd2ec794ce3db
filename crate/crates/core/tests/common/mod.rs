#![allow(dead_code)]

use bootgen::automata::{Dfa, DfaBuilder, Dfg, Label, Node};
use bootgen::{Action, Trace};
use rand::Rng;

pub fn t(s: &str) -> Trace {
    Trace::from_letters(s).unwrap()
}

pub fn action(i: usize) -> Action {
    Action::new(&format!("x{i}")).unwrap()
}

pub fn label(i: usize) -> Label {
    Label::Action(action(i))
}

/// A random trace-level DFA over `symbols` actions with up to `max_states`
/// states. Each (state, symbol) pair has a transition with probability
/// `density`.
pub fn random_dfa<R: Rng>(rng: &mut R, max_states: usize, symbols: usize, density: f64) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let mut b = DfaBuilder::new();
    for _ in 1..n {
        b.add_state();
    }
    for q in 0..n {
        b.set_accepting(q, rng.gen_bool(0.3));
        for s in 0..symbols {
            b.add_symbol(label(s));
            if rng.gen_bool(density) {
                b.add_transition(q, label(s), rng.gen_range(0..n)).unwrap();
            }
        }
    }
    b.build()
}

/// A random DFA whose language is non-empty.
pub fn random_nonempty_dfa<R: Rng>(rng: &mut R, max_states: usize, symbols: usize) -> Dfa {
    loop {
        let d = random_dfa(rng, max_states, symbols, 0.6);
        if !d.is_empty_language() {
            return d;
        }
    }
}

/// `a` with extra accepting states and extra transitions on undefined
/// (state, symbol) pairs; its language contains that of `a`.
pub fn enlarge<R: Rng>(rng: &mut R, a: &Dfa, symbols: usize) -> Dfa {
    let mut b = DfaBuilder::new();
    for _ in 1..a.state_count() {
        b.add_state();
    }
    // DfaBuilder starts at state 0; random_dfa also starts at 0.
    assert_eq!(a.start(), 0);
    for q in 0..a.state_count() {
        b.set_accepting(q, a.is_accepting(q) || rng.gen_bool(0.15));
        for s in 0..symbols {
            let l = label(s);
            b.add_symbol(l.clone());
            match a.step(q, &l) {
                Some(to) => b.add_transition(q, l, to).unwrap(),
                None if rng.gen_bool(0.3) => b
                    .add_transition(q, l, rng.gen_range(0..a.state_count()))
                    .unwrap(),
                None => {}
            }
        }
    }
    b.build()
}

/// Every word over `symbols` actions with length at most `max_len`.
pub fn all_words(symbols: usize, max_len: usize) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..symbols {
                let mut v: Vec<Label> = w.clone();
                v.push(label(s));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// A random DFG over at most `max_actions` actions in which every action
/// can reach the output node.
pub fn random_dfg<R: Rng>(rng: &mut R, max_actions: usize) -> Dfg {
    let n = rng.gen_range(1..=max_actions);
    let nodes: Vec<Node> = (0..n).map(|i| Node::Action(action(i))).collect();
    let mut g = Dfg::new();
    for node in &nodes {
        if rng.gen_bool(0.4) {
            g.add_arc(Node::Input, node.clone(), rng.gen_range(1..10))
                .unwrap();
        }
        for target in &nodes {
            if rng.gen_bool((2.0 / n as f64).min(1.0)) {
                g.add_arc(node.clone(), target.clone(), rng.gen_range(1..10))
                    .unwrap();
            }
        }
        if rng.gen_bool(0.3) {
            g.add_arc(node.clone(), Node::Output, rng.gen_range(1..10))
                .unwrap();
        }
    }
    if g.successors(&Node::Input).next().is_none() {
        g.add_arc(Node::Input, nodes[0].clone(), 1).unwrap();
    }
    for node in &nodes {
        if !g.reachable_from(node).contains(&Node::Output) {
            g.add_arc(node.clone(), Node::Output, 1).unwrap();
        }
    }
    g
}

/// Enumerates the words of a DFA with a finite language.
pub fn finite_language(a: &Dfa) -> Vec<Vec<Label>> {
    let a = a.trim();
    let mut out = Vec::new();
    let mut stack = vec![(a.start(), Vec::new())];
    while let Some((q, w)) = stack.pop() {
        assert!(w.len() <= 4 * a.state_count(), "language is infinite");
        if a.is_accepting(q) {
            out.push(w.clone());
        }
        for (l, to) in a.transitions_from(q) {
            let mut v: Vec<Label> = w.clone();
            v.push(l.clone());
            stack.push((to, v));
        }
    }
    out.sort();
    out
}

pub fn to_trace(word: &[Label]) -> Trace {
    word.iter()
        .map(|l| match l {
            Label::Action(a) => a.clone(),
            Label::Output => panic!("output marker inside a trace"),
        })
        .collect()
}
