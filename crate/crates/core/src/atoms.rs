//! Finite canonical representation of positive Boolean combinations of the
//! residuals of a regular language.
//!
//! The *profile* of a word `w` is the set of states of the canonical automaton
//! from which `w` is accepted. Two words with the same profile belong to
//! exactly the same residuals, so every union of intersections of residuals is
//! a union of profile classes. An [`AtomSet`] stores that union as a bit set
//! over the profiles that are actually realized by some word; since every
//! realized profile has a witness word, two atom sets are equal exactly when
//! their languages are.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use fixedbitset::FixedBitSet;

use crate::dfa::{Dfa, StateId};
use crate::error::{Error, Result};

static NEXT_TABLE_ID: AtomicU64 = AtomicU64::new(1);

/// Default cap on the number of realized profiles.
pub const DEFAULT_MAX_PROFILES: usize = 1 << 16;

#[derive(Clone)]
pub struct ProfileTable {
    id: u64,
    dfa: Dfa,
    /// Realized profiles as subsets of the automaton's states.
    profiles: Vec<FixedBitSet>,
    /// `pre[a][p]`: profile of `a w` for any `w` of profile `p`.
    pre: Vec<Vec<usize>>,
    lambda: usize,
    residuals: Vec<AtomSet>,
}

/// A language represented as a set of realized profiles of one [`ProfileTable`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AtomSet {
    table: u64,
    bits: FixedBitSet,
}

pub fn build_profile_table(dfa: &Dfa, max_profiles: usize) -> Result<ProfileTable> {
    ProfileTable::build(dfa, max_profiles)
}

impl ProfileTable {
    /// Closes the final-state set under letter preimages.
    pub fn build(dfa: &Dfa, max_profiles: usize) -> Result<ProfileTable> {
        let n = dfa.num_states();
        let k = dfa.alphabet().len();
        let mut lambda = FixedBitSet::with_capacity(n);
        for q in dfa.finals() {
            lambda.insert(q.index());
        }
        let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut profiles = vec![lambda.clone()];
        index.insert(lambda, 0);
        let mut pre: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut i = 0;
        while i < profiles.len() {
            for (a, row) in pre.iter_mut().enumerate() {
                let mut p = FixedBitSet::with_capacity(n);
                for q in 0..n {
                    if profiles[i].contains(dfa.step_raw(q, a)) {
                        p.insert(q);
                    }
                }
                let id = match index.get(&p) {
                    Some(&id) => id,
                    None => {
                        if profiles.len() >= max_profiles {
                            return Err(Error::BudgetExceeded { what: "profile", limit: max_profiles });
                        }
                        profiles.push(p.clone());
                        index.insert(p, profiles.len() - 1);
                        profiles.len() - 1
                    }
                };
                row.push(id);
            }
            i += 1;
        }
        let id = NEXT_TABLE_ID.fetch_add(1, Ordering::Relaxed);
        let m = profiles.len();
        let residuals = (0..n)
            .map(|q| {
                let mut bits = FixedBitSet::with_capacity(m);
                for (i, p) in profiles.iter().enumerate() {
                    if p.contains(q) {
                        bits.insert(i);
                    }
                }
                AtomSet { table: id, bits }
            })
            .collect();
        Ok(ProfileTable { id, dfa: dfa.clone(), profiles, pre, lambda: 0, residuals })
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn num_profiles(&self) -> usize {
        self.profiles.len()
    }

    /// States of the `i`-th realized profile.
    pub fn profile(&self, i: usize) -> Vec<StateId> {
        self.profiles[i].ones().map(StateId).collect()
    }

    pub fn lambda_profile(&self) -> usize {
        self.lambda
    }

    /// Profile of `a w` given the profile of `w`.
    pub fn pre(&self, letter: usize, profile: usize) -> usize {
        self.pre[letter][profile]
    }

    pub fn owns(&self, x: &AtomSet) -> bool {
        x.table == self.id
    }

    fn check(&self, x: &AtomSet) -> Result<()> {
        if self.owns(x) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn residual_atoms(&self, q: StateId) -> AtomSet {
        self.residuals[q.index()].clone()
    }

    pub fn residual(&self, q: StateId) -> &AtomSet {
        &self.residuals[q.index()]
    }

    pub fn top(&self) -> AtomSet {
        let mut bits = FixedBitSet::with_capacity(self.num_profiles());
        bits.insert_range(..);
        AtomSet { table: self.id, bits }
    }

    pub fn bottom(&self) -> AtomSet {
        AtomSet { table: self.id, bits: FixedBitSet::with_capacity(self.num_profiles()) }
    }

    /// Atom set with the given profile indices.
    pub fn from_profiles(&self, profiles: impl IntoIterator<Item = usize>) -> Result<AtomSet> {
        let mut bits = FixedBitSet::with_capacity(self.num_profiles());
        for p in profiles {
            if p >= self.num_profiles() {
                return Err(Error::Inconsistency(format!("profile {p} out of range")));
            }
            bits.insert(p);
        }
        Ok(AtomSet { table: self.id, bits })
    }

    /// `a^{-1} X`, where `letter` is an alphabet index.
    pub fn quotient_index(&self, x: &AtomSet, letter: usize) -> AtomSet {
        debug_assert!(self.owns(x));
        let mut bits = FixedBitSet::with_capacity(self.num_profiles());
        for (p, &pre) in self.pre[letter].iter().enumerate() {
            if x.bits.contains(pre) {
                bits.insert(p);
            }
        }
        AtomSet { table: self.id, bits }
    }

    pub fn quotient_letter(&self, x: &AtomSet, letter: char) -> Result<AtomSet> {
        self.check(x)?;
        let a = self.dfa.alphabet().index_of(letter).ok_or(Error::UnknownLetter(letter))?;
        Ok(self.quotient_index(x, a))
    }

    /// `w^{-1} X`.
    pub fn quotient_word(&self, x: &AtomSet, word: &str) -> Result<AtomSet> {
        self.check(x)?;
        let letters = self.dfa.alphabet().encode(word)?;
        Ok(self.quotient_indices(x, &letters))
    }

    pub fn quotient_indices(&self, x: &AtomSet, word: &[usize]) -> AtomSet {
        word.iter().fold(x.clone(), |acc, &a| self.quotient_index(&acc, a))
    }

    pub fn contains_lambda(&self, x: &AtomSet) -> bool {
        x.bits.contains(self.lambda)
    }

    /// Profile index of `word`.
    pub fn word_profile(&self, word: &str) -> Result<usize> {
        let letters = self.dfa.alphabet().encode(word)?;
        Ok(letters.iter().rev().fold(self.lambda, |p, &a| self.pre[a][p]))
    }

    pub fn contains_word(&self, x: &AtomSet, word: &str) -> Result<bool> {
        self.check(x)?;
        Ok(x.bits.contains(self.word_profile(word)?))
    }

    /// Automaton of the language of `x`, whose states are its quotients.
    pub fn language_dfa(&self, x: &AtomSet) -> Dfa {
        let k = self.dfa.alphabet().len();
        let mut index = HashMap::new();
        let mut states = vec![x.clone()];
        index.insert(x.clone(), 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let next = self.quotient_index(&states[i], a);
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    states.push(next);
                    states.len() - 1
                });
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        let finals = states.iter().map(|s| self.contains_lambda(s)).collect();
        Dfa::from_parts(self.dfa.alphabet().clone(), delta, 0, finals).expect("quotient automaton is complete")
    }

    /// Residual state whose language equals `x`, if any.
    pub fn as_residual(&self, x: &AtomSet) -> Option<StateId> {
        self.residuals.iter().position(|r| r == x).map(StateId)
    }
}

impl fmt::Debug for ProfileTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProfileTable")
            .field("states", &self.dfa.num_states())
            .field("profiles", &self.profiles.iter().map(|p| p.ones().collect::<Vec<_>>()).collect::<Vec<_>>())
            .finish()
    }
}

impl AtomSet {
    fn same_table(&self, other: &AtomSet) {
        assert_eq!(self.table, other.table, "atom sets from different profile tables");
    }

    /// Intersection of the two languages. Panics on atom sets of different tables.
    pub fn meet(&self, other: &AtomSet) -> AtomSet {
        self.same_table(other);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        AtomSet { table: self.table, bits }
    }

    /// Union of the two languages. Panics on atom sets of different tables.
    pub fn join(&self, other: &AtomSet) -> AtomSet {
        self.same_table(other);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        AtomSet { table: self.table, bits }
    }

    pub fn try_meet(&self, other: &AtomSet) -> Result<AtomSet> {
        if self.table != other.table {
            return Err(Error::TableMismatch);
        }
        Ok(self.meet(other))
    }

    pub fn try_join(&self, other: &AtomSet) -> Result<AtomSet> {
        if self.table != other.table {
            return Err(Error::TableMismatch);
        }
        Ok(self.join(other))
    }

    /// Language inclusion.
    pub fn leq(&self, other: &AtomSet) -> bool {
        self.same_table(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn try_leq(&self, other: &AtomSet) -> Result<bool> {
        if self.table != other.table {
            return Err(Error::TableMismatch);
        }
        Ok(self.leq(other))
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains_profile(&self, profile: usize) -> bool {
        self.bits.contains(profile)
    }

    /// Profile indices in increasing order.
    pub fn profiles(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub(crate) fn blocks(&self) -> &[usize] {
        self.bits.as_slice()
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AtomSet{:?}", self.profiles())
    }
}

/// `a ∪ (b ∩ c) == a ∪ (d ∩ e)` evaluated block-wise without allocating.
pub(crate) fn join_meet_eq(a: &AtomSet, b: &AtomSet, c: &AtomSet, d: &AtomSet, e: &AtomSet) -> bool {
    let (a, b, c, d, e) = (a.blocks(), b.blocks(), c.blocks(), d.blocks(), e.blocks());
    (0..a.len()).all(|i| (a[i] | (b[i] & c[i])) == (a[i] | (d[i] & e[i])))
}
