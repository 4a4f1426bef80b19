//! Subset reachability and synchronization in complete deterministic automata.
//!
//! - [`automaton`]: the automaton model, its text format and DOT export.
//! - [`power`]: breadth-first search over the power automaton.
//! - [`rank`]: words of rank `n - 1`, the Γ₁-graph and the extension method.
//! - [`families`]: generators for the automata studied.
//! - [`verify`]: named reproduction checks with a pass/fail report.

pub mod automaton;
pub mod error;
pub mod families;
pub mod power;
pub mod random;
pub mod rank;
pub mod verify;

pub use automaton::{Dfa, StateSet, Word};
pub use error::{Error, Result};
