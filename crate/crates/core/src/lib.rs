//! Canonical automata and syntactic algebras of regular languages.
//!
//! Starting from a regular expression, the crate builds the minimal automaton
//! of the language, its closures under intersection and union of residuals,
//! and the syntactic monoid, syntactic idempotent semiring and syntactic
//! lattice algebra as transformation structures. Reversibility of the
//! language is decided both by the forbidden-configuration criterion and by an
//! identity in the syntactic lattice algebra.

pub mod alphabet;
pub mod atoms;
pub mod canonical;
pub mod config;
pub mod dfa;
pub mod error;
pub mod oracle;
pub mod regex;
pub mod render;
pub mod reversibility;
pub mod syntactic;
pub mod term;

pub use alphabet::Alphabet;
pub use atoms::{build_profile_table, AtomSet, ProfileTable};
pub use canonical::{build_lattice_automaton, build_meet_automaton, hasse, AtomAutomaton, HasseDiagram};
pub use config::{Budgets, Language};
pub use dfa::{Dfa, StateId};
pub use error::{Error, Result};
pub use regex::{compile_canonical_dfa, parse_regex, Node, RegexAst};
pub use render::{
    cmd_algebra, cmd_automaton, cmd_reversible, AlgebraLevel, AutomatonLevel, Document, Format, RunConfig,
};
pub use reversibility::{
    check_reversibility_identity, counterexample_from_witness, find_forbidden_configuration, identity_sides,
    is_reversible, ForbiddenWitness, IdentityCounterexample, ReversibilityReport,
};
pub use syntactic::{
    check_lattice_algebra_axioms, check_lattice_algebra_tables, hasse_of_elements, multiply_lattice_elements,
    omega_power, syntactic_lattice_algebra, syntactic_monoid, syntactic_semiring, Axiom, AxiomReport,
    DfaTransformation, LatticeAlgebraElement, LatticeAlgebraTables, SemiringElement, SyntacticLatticeAlgebra,
    SyntacticMonoid, SyntacticSemiring, Violation,
};
pub use term::{
    embed, eval_term, multiply_lattice_forms, normalize_lattice, normalize_monoid, normalize_semiring, parse_term,
    separating_language, LatticeForm, MeetForm, Term, Word,
};
