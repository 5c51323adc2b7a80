//! Brute-force reference implementations used to validate the closure
//! engines: congruence tests straight from the residual characterizations,
//! exhaustive enumeration of element maps from bounded normal forms, and
//! seeded random generators for regexes, terms and forms.
//!
//! Word quotients are recomputed from raw automaton runs; only the atom-set
//! lattice operations are shared with the engines.

use std::collections::{BTreeSet, HashSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::alphabet::Alphabet;
use crate::atoms::{AtomSet, ProfileTable};
use crate::config::DEFAULT_MAX_ELEMENTS;
use crate::dfa::{Dfa, StateId};
use crate::error::{Error, Result};
use crate::regex::{Node, RegexAst};
use crate::syntactic::{SyntacticLatticeAlgebra, SyntacticMonoid, SyntacticSemiring};
use crate::term::{LatticeForm, MeetForm, Signature, Term, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_word_len: usize,
    pub max_term_nodes: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_word_len: 2, max_term_nodes: 8, seed: 0 }
    }
}

impl OracleConfig {
    pub fn rng(&self) -> StdRng {
        StdRng::seed_from_u64(self.seed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Monoid,
    Semiring,
    Lattice,
}

/// An element given by the language each residual is sent to, as sorted
/// profile lists, so that maps from different engines compare directly.
pub type ElementMap = Vec<Vec<usize>>;

fn run_word(dfa: &Dfa, q: StateId, w: &Word) -> Result<StateId> {
    dfa.run(q, &w.as_string())
}

/// `x∘w` for every residual `x`, from raw runs.
fn word_images<'a>(pt: &'a ProfileTable, dfa: &Dfa, w: &Word) -> Result<Vec<&'a AtomSet>> {
    dfa.states().map(|q| Ok(pt.residual(run_word(dfa, q, w)?))).collect()
}

fn meet_images(pt: &ProfileTable, dfa: &Dfa, m: &MeetForm) -> Result<Vec<AtomSet>> {
    let mut acc = vec![pt.top(); dfa.num_states()];
    for w in m.words() {
        for (a, x) in acc.iter_mut().zip(word_images(pt, dfa, w)?) {
            *a = a.meet(x);
        }
    }
    Ok(acc)
}

fn lattice_images(pt: &ProfileTable, dfa: &Dfa, form: &LatticeForm) -> Result<Vec<AtomSet>> {
    let mut acc = vec![pt.bottom(); dfa.num_states()];
    for m in form.meets() {
        for (a, x) in acc.iter_mut().zip(meet_images(pt, dfa, m)?) {
            *a = a.join(&x);
        }
    }
    Ok(acc)
}

/// `u` and `v` act identically on every residual.
pub fn oracle_monoid_congruent(_pt: &ProfileTable, dfa: &Dfa, u: &Word, v: &Word) -> Result<bool> {
    for q in dfa.states() {
        if run_word(dfa, q, u)? != run_word(dfa, q, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn oracle_semiring_congruent(pt: &ProfileTable, dfa: &Dfa, u: &MeetForm, v: &MeetForm) -> Result<bool> {
    Ok(meet_images(pt, dfa, u)? == meet_images(pt, dfa, v)?)
}

pub fn oracle_lattice_congruent(pt: &ProfileTable, dfa: &Dfa, u: &LatticeForm, v: &LatticeForm) -> Result<bool> {
    Ok(lattice_images(pt, dfa, u)? == lattice_images(pt, dfa, v)?)
}

fn to_map(images: &[AtomSet]) -> ElementMap {
    images.iter().map(AtomSet::profiles).collect()
}

fn words_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for &c in alphabet.letters() {
                out.push(out[i].concat(&Word::new(&c.to_string())));
            }
        }
        start = end;
    }
    out
}

/// Distinct element maps of all normal forms whose words have length at
/// most `cfg.max_word_len`.
pub fn oracle_enumerate_elements(
    pt: &ProfileTable,
    dfa: &Dfa,
    level: Level,
    cfg: &OracleConfig,
) -> Result<BTreeSet<ElementMap>> {
    let budget = |n: usize| {
        if n > DEFAULT_MAX_ELEMENTS {
            Err(Error::BudgetExceeded { what: "element", limit: DEFAULT_MAX_ELEMENTS })
        } else {
            Ok(())
        }
    };
    let mut word_maps: Vec<Vec<AtomSet>> = Vec::new();
    let mut seen = HashSet::new();
    for w in words_up_to(dfa.alphabet(), cfg.max_word_len) {
        let images: Vec<AtomSet> = word_images(pt, dfa, &w)?.into_iter().cloned().collect();
        if seen.insert(images.clone()) {
            word_maps.push(images);
        }
    }
    if level == Level::Monoid {
        return Ok(word_maps.iter().map(|m| to_map(m)).collect());
    }
    let mut meets: Vec<Vec<AtomSet>> = vec![vec![pt.top(); dfa.num_states()]];
    let mut seen: HashSet<Vec<AtomSet>> = meets.iter().cloned().collect();
    for wm in &word_maps {
        let new: Vec<Vec<AtomSet>> = meets.iter().map(|s| s.iter().zip(wm).map(|(x, y)| x.meet(y)).collect()).collect();
        for m in new {
            if seen.insert(m.clone()) {
                meets.push(m);
                budget(meets.len())?;
            }
        }
    }
    if level == Level::Semiring {
        return Ok(meets.iter().map(|m| to_map(m)).collect());
    }
    let mut joins: Vec<Vec<AtomSet>> = vec![vec![pt.bottom(); dfa.num_states()]];
    let mut seen: HashSet<Vec<AtomSet>> = joins.iter().cloned().collect();
    for sm in &meets {
        let new: Vec<Vec<AtomSet>> = joins.iter().map(|j| j.iter().zip(sm).map(|(x, y)| x.join(y)).collect()).collect();
        for j in new {
            if seen.insert(j.clone()) {
                joins.push(j);
                budget(joins.len())?;
            }
        }
    }
    Ok(joins.iter().map(|m| to_map(m)).collect())
}

/// Enumerates with growing word length until two consecutive bounds agree.
/// Returns the bound at which that happened and the element maps.
pub fn saturated_elements(
    pt: &ProfileTable,
    dfa: &Dfa,
    level: Level,
    cfg: &OracleConfig,
    max_len: usize,
) -> Result<Option<(usize, BTreeSet<ElementMap>)>> {
    let mut k = cfg.max_word_len;
    let mut prev = oracle_enumerate_elements(pt, dfa, level, &OracleConfig { max_word_len: k, ..*cfg })?;
    while k < max_len {
        let next = oracle_enumerate_elements(pt, dfa, level, &OracleConfig { max_word_len: k + 1, ..*cfg })?;
        if next == prev {
            return Ok(Some((k, prev)));
        }
        prev = next;
        k += 1;
    }
    Ok(None)
}

pub fn monoid_maps(m: &SyntacticMonoid, pt: &ProfileTable) -> BTreeSet<ElementMap> {
    m.elements().iter().map(|e| e.map.iter().map(|&q| pt.residual(StateId(q)).profiles()).collect()).collect()
}

pub fn semiring_maps(s: &SyntacticSemiring) -> BTreeSet<ElementMap> {
    s.elements().iter().map(|e| e.images.iter().map(|&x| s.automaton().state(x).profiles()).collect()).collect()
}

pub fn lattice_maps(alg: &SyntacticLatticeAlgebra) -> BTreeSet<ElementMap> {
    alg.elements().iter().map(|e| e.images.iter().map(|&x| alg.automaton().state(x).profiles()).collect()).collect()
}

/// A random regex with at most `max_nodes` nodes over `alphabet`.
pub fn random_regex(rng: &mut impl Rng, alphabet: &Alphabet, max_nodes: usize) -> RegexAst {
    let budget = rng.random_range(1..=max_nodes.max(1));
    let root = random_node(rng, alphabet, budget);
    RegexAst::new(root, alphabet.clone()).expect("letters come from the alphabet")
}

fn random_node(rng: &mut impl Rng, alphabet: &Alphabet, budget: usize) -> Node {
    let leaf = |rng: &mut dyn rand::RngCore| match rng.random_range(0..10) {
        0 => Node::Empty,
        1 => Node::Epsilon,
        _ => Node::Letter(alphabet.letter(rng.random_range(0..alphabet.len()))),
    };
    if budget <= 1 {
        return leaf(rng);
    }
    if budget == 2 {
        let a = random_node(rng, alphabet, 1);
        return match rng.random_range(0..3) {
            0 => Node::star(a),
            1 => Node::plus(a),
            _ => Node::optional(a),
        };
    }
    match rng.random_range(0..5) {
        0 => Node::star(random_node(rng, alphabet, budget - 1)),
        1 | 2 => {
            let left = rng.random_range(1..budget - 1);
            Node::concat(random_node(rng, alphabet, left), random_node(rng, alphabet, budget - 1 - left))
        }
        _ => {
            let left = rng.random_range(1..budget - 1);
            Node::union(random_node(rng, alphabet, left), random_node(rng, alphabet, budget - 1 - left))
        }
    }
}

/// A random term of the given signature with at most `max_nodes` nodes.
pub fn random_term(rng: &mut impl Rng, alphabet: &Alphabet, max_nodes: usize, signature: Signature) -> Term {
    let budget = rng.random_range(1..=max_nodes.max(1));
    random_term_sized(rng, alphabet, budget, signature)
}

fn random_term_sized(rng: &mut impl Rng, alphabet: &Alphabet, budget: usize, sig: Signature) -> Term {
    if budget < 3 {
        let constants: &[Term] = match sig {
            Signature::Monoid => &[Term::Lambda],
            Signature::Semiring => &[Term::Lambda, Term::Top],
            Signature::Lattice => &[Term::Lambda, Term::Top, Term::Bottom],
        };
        return if rng.random_range(0..4) == 0 {
            constants[rng.random_range(0..constants.len())].clone()
        } else {
            Term::Letter(alphabet.letter(rng.random_range(0..alphabet.len())))
        };
    }
    let ops = match sig {
        Signature::Monoid => 1,
        Signature::Semiring => 2,
        Signature::Lattice => 3,
    };
    let left = rng.random_range(1..budget - 1);
    let a = random_term_sized(rng, alphabet, left, sig);
    let b = random_term_sized(rng, alphabet, budget - 1 - left, sig);
    match rng.random_range(0..ops) {
        0 => Term::concat(a, b),
        1 => Term::meet(a, b),
        _ => Term::join(a, b),
    }
}

fn random_word(rng: &mut impl Rng, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    let s: String = (0..len).map(|_| alphabet.letter(rng.random_range(0..alphabet.len()))).collect();
    Word::new(&s)
}

pub fn random_meet_form(rng: &mut impl Rng, alphabet: &Alphabet, max_words: usize, max_len: usize) -> MeetForm {
    let n = rng.random_range(0..=max_words);
    MeetForm::from_words((0..n).map(|_| random_word(rng, alphabet, max_len)))
}

/// A random canonical lattice form with at most `max_meets` meets of at most
/// `max_words` words of length at most `max_len`.
pub fn random_lattice_form(
    rng: &mut impl Rng,
    alphabet: &Alphabet,
    max_meets: usize,
    max_words: usize,
    max_len: usize,
) -> LatticeForm {
    let n = rng.random_range(0..=max_meets);
    LatticeForm::from_meets((0..n).map(|_| random_meet_form(rng, alphabet, max_words, max_len)))
}
