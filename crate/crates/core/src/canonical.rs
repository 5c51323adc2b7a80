//! The canonical meet automaton and canonical lattice automaton: the closures
//! of the residuals of a language under intersection, and under intersection
//! and union, with letterwise quotients as transitions.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::alphabet::Alphabet;
use crate::atoms::{AtomSet, ProfileTable};
use crate::dfa::{dot_escape, Dfa, StateId};
use crate::error::{Error, Result};

/// Default cap on the number of states of a meet or lattice automaton.
pub const DEFAULT_MAX_STATES: usize = 10_000;

/// Covering pairs `(lower, upper)` of a partial order, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HasseDiagram {
    pub covers: Vec<(usize, usize)>,
}

impl HasseDiagram {
    /// Transitive reduction of the order `leq` on `0..n`.
    pub fn from_order(n: usize, leq: impl Fn(usize, usize) -> bool) -> HasseDiagram {
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                if i != j && leq(i, j) {
                    above[i].insert(j);
                    below[j].insert(i);
                }
            }
        }
        let mut covers = Vec::new();
        for i in 0..n {
            for j in above[i].ones() {
                if above[i].is_disjoint(&below[j]) {
                    covers.push((i, j));
                }
            }
        }
        HasseDiagram { covers }
    }

    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }

    pub fn contains(&self, lower: usize, upper: usize) -> bool {
        self.covers.binary_search(&(lower, upper)).is_ok()
    }
}

/// Cover relation of language inclusion on deduplicated atom sets.
pub fn hasse(states: &[AtomSet]) -> HasseDiagram {
    HasseDiagram::from_order(states.len(), |i, j| states[i].leq(&states[j]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutomatonKind {
    Meet,
    Lattice,
}

/// A deterministic automaton whose states are languages given as atom sets.
#[derive(Clone, Debug)]
pub struct AtomAutomaton {
    kind: AutomatonKind,
    alphabet: Alphabet,
    states: Vec<AtomSet>,
    labels: Vec<String>,
    /// `delta[q * k + a]`.
    delta: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
    order: HasseDiagram,
}

pub type MeetAutomaton = AtomAutomaton;
pub type LatticeAutomaton = AtomAutomaton;

/// Closes residuals and `⊤` under pairwise intersection.
pub fn build_meet_automaton(pt: &ProfileTable, dfa: &Dfa, max_states: usize) -> Result<MeetAutomaton> {
    check_table(pt, dfa)?;
    let mut seeds: Vec<AtomSet> = dfa.states().map(|q| pt.residual_atoms(q)).collect();
    seeds.push(pt.top());
    let states = meet_closure(seeds, max_states, |x, y| x.meet(y))?;
    let labels = meet_labels(dfa, pt, &states);
    AtomAutomaton::assemble(AutomatonKind::Meet, pt, dfa, states, labels)
}

/// Closes the meet automaton's states and `⊥` under pairwise union.
pub fn build_lattice_automaton(pt: &ProfileTable, dfa: &Dfa, max_states: usize) -> Result<LatticeAutomaton> {
    let meet = build_meet_automaton(pt, dfa, max_states)?;
    let mut seeds = meet.states.clone();
    seeds.push(pt.bottom());
    let states = meet_closure(seeds, max_states, |x, y| x.join(y))?;
    let labels = states
        .iter()
        .enumerate()
        .map(|(i, x)| {
            if i < meet.states.len() {
                return meet.labels[i].clone();
            }
            let below: Vec<usize> = (0..meet.states.len()).filter(|&j| meet.states[j].leq(x)).collect();
            let maximal: Vec<&str> = below
                .iter()
                .filter(|&&j| {
                    !below
                        .iter()
                        .any(|&k| k != j && meet.states[j].leq(&meet.states[k]) && meet.states[j] != meet.states[k])
                })
                .map(|&j| meet.labels[j].as_str())
                .collect();
            if maximal.is_empty() {
                "%0".to_string()
            } else {
                maximal.join("|")
            }
        })
        .collect();
    AtomAutomaton::assemble(AutomatonKind::Lattice, pt, dfa, states, labels)
}

fn check_table(pt: &ProfileTable, dfa: &Dfa) -> Result<()> {
    if pt.dfa() != dfa {
        return Err(Error::Inconsistency("profile table was built from a different automaton".into()));
    }
    Ok(())
}

/// Deduplicates `seeds` in order, then appends new results of `op` on pairs
/// until closed. Each new state is combined with every earlier one.
fn meet_closure(
    seeds: Vec<AtomSet>,
    max_states: usize,
    op: impl Fn(&AtomSet, &AtomSet) -> AtomSet,
) -> Result<Vec<AtomSet>> {
    let mut index: HashMap<AtomSet, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut add = |x: AtomSet, states: &mut Vec<AtomSet>| -> Result<()> {
        if !index.contains_key(&x) {
            if states.len() >= max_states {
                return Err(Error::BudgetExceeded { what: "state", limit: max_states });
            }
            index.insert(x.clone(), states.len());
            states.push(x);
        }
        Ok(())
    };
    for s in seeds {
        add(s, &mut states)?;
    }
    let mut i = 0;
    while i < states.len() {
        for j in 0..i {
            let z = op(&states[i], &states[j]);
            add(z, &mut states)?;
        }
        i += 1;
    }
    Ok(states)
}

/// Names each state by the minimal residuals above it, joined with `&`.
fn meet_labels(dfa: &Dfa, pt: &ProfileTable, states: &[AtomSet]) -> Vec<String> {
    let residuals: Vec<(StateId, &AtomSet)> = dfa.states().map(|q| (q, pt.residual(q))).collect();
    states
        .iter()
        .map(|x| {
            if let Some(q) = pt.as_residual(x) {
                return dfa.label(q);
            }
            let above: Vec<&(StateId, &AtomSet)> = residuals.iter().filter(|(_, r)| x.leq(r)).collect();
            let minimal: Vec<String> = above
                .iter()
                .filter(|(_, r)| !above.iter().any(|(_, s)| s.leq(r) && s != r))
                .map(|(q, _)| dfa.label(*q))
                .collect();
            if minimal.is_empty() {
                "A*".to_string()
            } else {
                minimal.join("&")
            }
        })
        .collect()
}

impl AtomAutomaton {
    fn assemble(
        kind: AutomatonKind,
        pt: &ProfileTable,
        dfa: &Dfa,
        states: Vec<AtomSet>,
        labels: Vec<String>,
    ) -> Result<AtomAutomaton> {
        let index: HashMap<&AtomSet, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let k = dfa.alphabet().len();
        let mut delta = Vec::with_capacity(states.len() * k);
        for s in &states {
            for a in 0..k {
                let next = pt.quotient_index(s, a);
                let id = *index
                    .get(&next)
                    .ok_or_else(|| Error::Inconsistency("state set not closed under quotients".into()))?;
                delta.push(id);
            }
        }
        let initial = index[pt.residual(dfa.initial())];
        let finals = states.iter().map(|s| pt.contains_lambda(s)).collect();
        let order = hasse(&states);
        Ok(AtomAutomaton { kind, alphabet: dfa.alphabet().clone(), states, labels, delta, initial, finals, order })
    }

    pub fn kind(&self) -> AutomatonKind {
        self.kind
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[AtomSet] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &AtomSet {
        &self.states[i]
    }

    pub fn index_of(&self, x: &AtomSet) -> Option<usize> {
        self.states.iter().position(|s| s == x)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, i: usize) -> bool {
        self.finals[i]
    }

    pub fn finals(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|&i| self.finals[i]).collect()
    }

    pub fn step(&self, i: usize, letter: usize) -> usize {
        self.delta[i * self.alphabet.len() + letter]
    }

    pub fn order(&self) -> &HasseDiagram {
        &self.order
    }

    /// The automaton viewed as a plain DFA from its initial state.
    pub fn to_dfa(&self) -> Dfa {
        let k = self.alphabet.len();
        let delta = (0..self.states.len()).map(|i| self.delta[i * k..(i + 1) * k].to_vec()).collect();
        Dfa::from_parts(self.alphabet.clone(), delta, self.initial, self.finals.clone())
            .expect("transition table is complete")
    }

    /// Graphviz rendering: labeled solid transitions, dashed inclusion covers.
    pub fn to_dot(&self) -> String {
        let name = match self.kind {
            AutomatonKind::Meet => "meet_automaton",
            AutomatonKind::Lattice => "lattice_automaton",
        };
        let mut out = String::new();
        let _ = writeln!(out, "digraph {name} {{");
        let _ = writeln!(out, "  rankdir=LR;");
        let _ = writeln!(out, "  start [shape=point];");
        for (i, label) in self.labels.iter().enumerate() {
            let shape = if self.finals[i] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  q{i} [label=\"{}\", shape={shape}];", dot_escape(label));
        }
        let _ = writeln!(out, "  start -> q{};", self.initial);
        for i in 0..self.states.len() {
            for (a, &c) in self.alphabet.letters().iter().enumerate() {
                let _ = writeln!(out, "  q{i} -> q{} [label=\"{}\"];", self.step(i, a), dot_escape(&c.to_string()));
            }
        }
        for &(lo, hi) in &self.order.covers {
            let _ = writeln!(out, "  q{lo} -> q{hi} [style=dashed, arrowhead=none, constraint=false];");
        }
        out.push_str("}\n");
        out
    }
}
