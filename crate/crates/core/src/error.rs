use thiserror::Error;

use crate::automaton::StateSet;

/// Errors produced by parsing, searching and analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line}: state {value} out of range 1..={n}")]
    StateRange { line: usize, value: usize, n: usize },

    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),

    #[error("invalid letter name `{0}`")]
    InvalidLetterName(String),

    #[error("automata with {0} states are not supported (maximum is 64)")]
    TooManyStates(usize),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("letter index {index} out of range for an alphabet of {alphabet} letters")]
    InvalidWord { index: usize, alphabet: usize },

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("invalid state set: {0}")]
    InvalidStateSet(String),

    #[error("search exceeded the cap of {cap} {what}")]
    CapExceeded { cap: usize, what: &'static str },

    #[error("expected a transformation of rank {expected}, found rank {found}")]
    WrongRank { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),

    #[error("generator self-check failed: {0}")]
    SelfCheck(String),

    #[error("state set {0} is not reachable")]
    Unreachable(StateSet),
}

pub type Result<T> = std::result::Result<T, Error>;
