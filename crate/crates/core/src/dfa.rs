//! Complete deterministic automata.
//!
//! Every [`Dfa`] is total and trim: each state is reachable from the initial
//! state and has exactly one successor per letter. States are numbered in
//! breadth-first order from the initial state, exploring letters in alphabet
//! order, so two isomorphic automata built through this module are equal.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// Index of a state in a [`Dfa`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    /// Row-major `num_states x alphabet.len()` transition table.
    delta: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl Dfa {
    /// Builds an automaton from raw parts.
    ///
    /// `delta[q][a]` is the successor of state `q` on the `a`-th letter. States
    /// unreachable from `initial` are dropped and the rest renumbered
    /// canonically.
    pub fn from_parts(alphabet: Alphabet, delta: Vec<Vec<usize>>, initial: usize, finals: Vec<bool>) -> Result<Dfa> {
        Self::from_parts_labeled(alphabet, delta, initial, finals, None)
    }

    pub fn from_parts_labeled(
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        initial: usize,
        finals: Vec<bool>,
        labels: Option<Vec<String>>,
    ) -> Result<Dfa> {
        let n = delta.len();
        let k = alphabet.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        if initial >= n {
            return Err(Error::InvalidAutomaton("initial state out of range".into()));
        }
        if finals.len() != n {
            return Err(Error::InvalidAutomaton("final flags do not match state count".into()));
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::InvalidAutomaton("labels do not match state count".into()));
            }
        }
        let mut flat = Vec::with_capacity(n * k);
        for (q, row) in delta.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidAutomaton(format!("state {q} has {} transitions, expected {k}", row.len())));
            }
            for &t in row {
                if t >= n {
                    return Err(Error::InvalidAutomaton(format!("state {q} targets missing state {t}")));
                }
            }
            flat.extend_from_slice(row);
        }
        let (dfa, _) = canonicalize(alphabet, &flat, initial, &finals, labels.as_deref());
        Ok(dfa)
    }

    /// Automaton accepting exactly the given finite set of words.
    pub fn from_words<S: AsRef<str>>(alphabet: &Alphabet, words: &[S]) -> Result<Dfa> {
        let k = alphabet.len();
        // state 0 is the sink, state 1 the trie root
        let mut delta = vec![vec![0; k], vec![0; k]];
        let mut finals = vec![false, false];
        for w in words {
            let mut q = 1;
            for a in alphabet.encode(w.as_ref())? {
                if delta[q][a] == 0 {
                    delta.push(vec![0; k]);
                    finals.push(false);
                    delta[q][a] = delta.len() - 1;
                }
                q = delta[q][a];
            }
            finals[q] = true;
        }
        Ok(Dfa::from_parts(alphabet.clone(), delta, 1, finals)?.minimize())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.num_states()).map(StateId)
    }

    pub fn initial(&self) -> StateId {
        StateId(self.initial)
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q.0]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states().filter(|&q| self.is_final(q))
    }

    /// Successor of `q` on the letter with alphabet index `letter`.
    #[inline]
    pub fn step(&self, q: StateId, letter: usize) -> StateId {
        StateId(self.delta[q.0 * self.alphabet.len() + letter])
    }

    #[inline]
    pub(crate) fn step_raw(&self, q: usize, letter: usize) -> usize {
        self.delta[q * self.alphabet.len() + letter]
    }

    pub fn run(&self, from: StateId, word: &str) -> Result<StateId> {
        let mut q = from;
        for c in word.chars() {
            let a = self.alphabet.index_of(c).ok_or(Error::UnknownLetter(c))?;
            q = self.step(q, a);
        }
        Ok(q)
    }

    pub fn run_indices(&self, from: StateId, word: &[usize]) -> StateId {
        word.iter().fold(from, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.is_final(self.run(self.initial(), word)?))
    }

    pub fn label(&self, q: StateId) -> String {
        match &self.labels {
            Some(l) => l[q.0].clone(),
            None => format!("q{}", q.0),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.states().map(|q| self.label(q)).collect()
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Dfa> {
        if labels.len() != self.num_states() {
            return Err(Error::InvalidAutomaton("labels do not match state count".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Transition rows, one per state.
    pub fn transition_table(&self) -> Vec<Vec<usize>> {
        self.delta.chunks(self.alphabet.len()).map(|r| r.to_vec()).collect()
    }

    /// Language-equivalent automaton without equivalent states.
    pub fn minimize(&self) -> Dfa {
        self.minimize_with_map().0
    }

    /// Minimizes and returns, for every original state, its image state.
    pub(crate) fn minimize_with_map(&self) -> (Dfa, Vec<usize>) {
        let block_of = self.hopcroft_partition();
        let nblocks = block_of.iter().max().map_or(0, |m| m + 1);
        let k = self.alphabet.len();
        let mut rep = vec![usize::MAX; nblocks];
        for (q, &b) in block_of.iter().enumerate() {
            if rep[b] == usize::MAX {
                rep[b] = q;
            }
        }
        let mut delta = Vec::with_capacity(nblocks * k);
        let mut finals = Vec::with_capacity(nblocks);
        for &r in &rep {
            for a in 0..k {
                delta.push(block_of[self.step_raw(r, a)]);
            }
            finals.push(self.finals[r]);
        }
        let labels = self.labels.as_ref().map(|labels| {
            let mut best: Vec<Option<&String>> = vec![None; nblocks];
            for (q, l) in labels.iter().enumerate() {
                let slot = &mut best[block_of[q]];
                let better = match slot {
                    None => true,
                    Some(cur) => (l.len(), l.as_str()) < (cur.len(), cur.as_str()),
                };
                if better {
                    *slot = Some(l);
                }
            }
            best.into_iter().map(|l| l.cloned().unwrap_or_default()).collect::<Vec<_>>()
        });
        let (dfa, renumber) =
            canonicalize(self.alphabet.clone(), &delta, block_of[self.initial], &finals, labels.as_deref());
        let map = block_of.iter().map(|&b| renumber[b].expect("quotient of a trim automaton is trim")).collect();
        (dfa, map)
    }

    /// Hopcroft partition refinement; returns the block index of every state.
    fn hopcroft_partition(&self) -> Vec<usize> {
        let n = self.num_states();
        let k = self.alphabet.len();
        let mut inverse = vec![vec![Vec::new(); n]; k];
        for q in 0..n {
            for (a, inv) in inverse.iter_mut().enumerate() {
                inv[self.step_raw(q, a)].push(q);
            }
        }

        let (accepting, rejecting): (Vec<usize>, Vec<usize>) = (0..n).partition(|&q| self.finals[q]);
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0; n];
        for part in [accepting, rejecting] {
            if !part.is_empty() {
                for &q in &part {
                    block_of[q] = blocks.len();
                }
                blocks.push(part);
            }
        }

        let mut pending: Vec<Vec<bool>> = vec![vec![false; k]; blocks.len()];
        let mut work: Vec<(usize, usize)> = Vec::new();
        if blocks.len() == 2 {
            let smaller = if blocks[0].len() <= blocks[1].len() { 0 } else { 1 };
            for a in (0..k).rev() {
                work.push((smaller, a));
                pending[smaller][a] = true;
            }
        }

        let mut in_preimage = vec![false; n];
        let mut hits = vec![0usize; n];
        while let Some((splitter, a)) = work.pop() {
            pending[splitter][a] = false;
            let mut preimage = Vec::new();
            for &t in &blocks[splitter] {
                for &s in &inverse[a][t] {
                    if !in_preimage[s] {
                        in_preimage[s] = true;
                        preimage.push(s);
                    }
                }
            }
            let mut touched = Vec::new();
            for &s in &preimage {
                let b = block_of[s];
                if hits[b] == 0 {
                    touched.push(b);
                }
                hits[b] += 1;
            }
            for b in touched {
                let count = std::mem::take(&mut hits[b]);
                if count == blocks[b].len() {
                    continue;
                }
                let (inside, outside): (Vec<usize>, Vec<usize>) = blocks[b].iter().partition(|&&q| in_preimage[q]);
                let new = blocks.len();
                for &q in &inside {
                    block_of[q] = new;
                }
                let inside_smaller = inside.len() <= outside.len();
                blocks[b] = outside;
                blocks.push(inside);
                pending.push(vec![false; k]);
                for c in 0..k {
                    if pending[b][c] {
                        pending[new][c] = true;
                        work.push((new, c));
                    } else {
                        let pick = if inside_smaller { new } else { b };
                        pending[pick][c] = true;
                        work.push((pick, c));
                    }
                }
            }
            for s in preimage {
                in_preimage[s] = false;
            }
        }
        block_of
    }

    fn check_alphabet(&self, other: &Dfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    /// Language equality by Hopcroft–Karp union-find merging.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        self.check_alphabet(other)?;
        let offset = self.num_states();
        let mut uf = UnionFind::new(offset + other.num_states());
        let mut stack = vec![(self.initial, other.initial)];
        uf.union(self.initial, offset + other.initial);
        while let Some((p, q)) = stack.pop() {
            if self.finals[p] != other.finals[q] {
                return Ok(false);
            }
            for a in 0..self.alphabet.len() {
                let (p2, q2) = (self.step_raw(p, a), other.step_raw(q, a));
                if uf.union(p2, offset + q2) {
                    stack.push((p2, q2));
                }
            }
        }
        Ok(true)
    }

    /// Shortlex-least word accepted by exactly one of the two automata.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<String>> {
        self.check_alphabet(other)?;
        let start = (self.initial, other.initial);
        let mut parent: HashMap<(usize, usize), Option<((usize, usize), usize)>> = HashMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some(pair @ (p, q)) = queue.pop_front() {
            if self.finals[p] != other.finals[q] {
                let mut letters = Vec::new();
                let mut cur = pair;
                while let Some(Some((prev, a))) = parent.get(&cur) {
                    letters.push(self.alphabet.letter(*a));
                    cur = *prev;
                }
                return Ok(Some(letters.into_iter().rev().collect()));
            }
            for a in 0..self.alphabet.len() {
                let next = (self.step_raw(p, a), other.step_raw(q, a));
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert(Some((pair, a)));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    /// Reachable part of the synchronous product; a pair is final when
    /// `accept(p_final, q_final)` holds.
    pub fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        self.check_alphabet(other)?;
        let k = self.alphabet.len();
        let mut index = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let next = (self.step_raw(p, a), other.step_raw(q, a));
                let id = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        let finals = pairs.iter().map(|&(p, q)| accept(self.finals[p], other.finals[q])).collect();
        Dfa::from_parts(self.alphabet.clone(), delta, 0, finals)
    }

    /// Complement automaton (same states, finality flipped).
    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        d.finals.iter_mut().for_each(|f| *f = !*f);
        d.labels = None;
        d
    }

    /// Automaton started at `q` instead of the initial state.
    pub fn residual(&self, q: StateId) -> Dfa {
        let (dfa, _) = canonicalize(self.alphabet.clone(), &self.delta, q.0, &self.finals, self.labels.as_deref());
        dfa
    }

    /// Graphviz rendering: doubled circles mark final states.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph dfa {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  __start [shape=point];").unwrap();
        for q in self.states() {
            let shape = if self.is_final(q) { "doublecircle" } else { "circle" };
            writeln!(out, "  q{} [label=\"{}\", shape={shape}];", q.0, dot_escape(&self.label(q))).unwrap();
        }
        writeln!(out, "  __start -> q{};", self.initial).unwrap();
        for q in self.states() {
            for (a, &c) in self.alphabet.letters().iter().enumerate() {
                writeln!(out, "  q{} -> q{} [label=\"{c}\"];", q.0, self.step(q, a).0).unwrap();
            }
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Dfa over {} (initial q{})", self.alphabet, self.initial)?;
        for q in self.states() {
            write!(f, "  {}{} [{}]:", if self.is_final(q) { "*" } else { " " }, q, self.label(q))?;
            for a in 0..self.alphabet.len() {
                write!(f, " {}->{}", self.alphabet.letter(a), self.step(q, a))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub(crate) fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Restricts to states reachable from `initial` and renumbers them in BFS
/// order. Returns the new automaton and the old-to-new state map.
fn canonicalize(
    alphabet: Alphabet,
    delta: &[usize],
    initial: usize,
    finals: &[bool],
    labels: Option<&[String]>,
) -> (Dfa, Vec<Option<usize>>) {
    let k = alphabet.len();
    let n = finals.len();
    let mut renumber = vec![None; n];
    let mut order = vec![initial];
    renumber[initial] = Some(0);
    let mut i = 0;
    while i < order.len() {
        let q = order[i];
        for a in 0..k {
            let t = delta[q * k + a];
            if renumber[t].is_none() {
                renumber[t] = Some(order.len());
                order.push(t);
            }
        }
        i += 1;
    }
    let mut new_delta = Vec::with_capacity(order.len() * k);
    for &q in &order {
        for a in 0..k {
            new_delta.push(renumber[delta[q * k + a]].unwrap());
        }
    }
    let dfa = Dfa {
        alphabet,
        delta: new_delta,
        initial: 0,
        finals: order.iter().map(|&q| finals[q]).collect(),
        labels: labels.map(|l| order.iter().map(|&q| l[q].clone()).collect()),
    };
    (dfa, renumber)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the two classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[rb] = ra;
        true
    }
}
