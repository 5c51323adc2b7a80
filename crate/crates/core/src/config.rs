//! Resource limits and the regex-to-profile-table pipeline.

use crate::alphabet::Alphabet;
use crate::atoms::{build_profile_table, ProfileTable, DEFAULT_MAX_PROFILES};
use crate::canonical::DEFAULT_MAX_STATES;
use crate::dfa::Dfa;
use crate::error::Result;
use crate::regex::{compile_canonical_dfa, parse_regex, RegexAst};

pub const DEFAULT_MAX_ELEMENTS: usize = 100_000;
pub const DEFAULT_QUADRUPLE_WARNING: u64 = 1_000_000;

/// Caps on intermediate sizes. `quadruples` only triggers a warning.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub states: usize,
    pub profiles: usize,
    pub elements: usize,
    pub quadruples: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            states: DEFAULT_MAX_STATES,
            profiles: DEFAULT_MAX_PROFILES,
            elements: DEFAULT_MAX_ELEMENTS,
            quadruples: DEFAULT_QUADRUPLE_WARNING,
        }
    }
}

/// A regular language with its canonical automaton and profile table.
#[derive(Clone, Debug)]
pub struct Language {
    pub regex: String,
    pub ast: RegexAst,
    pub dfa: Dfa,
    pub table: ProfileTable,
}

impl Language {
    pub fn new(regex: &str, alphabet: &str, budgets: &Budgets) -> Result<Language> {
        let alphabet = Alphabet::new(alphabet)?;
        let ast = parse_regex(regex, &alphabet)?;
        let dfa = compile_canonical_dfa(&ast, budgets.states)?;
        let table = build_profile_table(&dfa, budgets.profiles)?;
        Ok(Language { regex: regex.to_string(), ast, dfa, table })
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }
}
