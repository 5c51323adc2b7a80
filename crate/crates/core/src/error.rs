use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("letter '{letter}' at position {pos} is not in the alphabet")]
    LetterOutsideAlphabet { letter: char, pos: usize },

    #[error("unknown letter '{0}'")]
    UnknownLetter(char),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("alphabets differ")]
    AlphabetMismatch,

    #[error("atom sets belong to different profile tables")]
    TableMismatch,

    #[error("{what} budget of {limit} exceeded")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("term uses {op} outside the {signature} signature")]
    Signature { op: &'static str, signature: &'static str },

    #[error("the two normal forms are equal")]
    EqualForms,

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 3,
            Error::Inconsistency(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
