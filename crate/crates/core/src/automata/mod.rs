//! Machines and their run semantics: finite-state automata, deterministic
//! pushdown automata with ε-moves, and (non)deterministic visibly pushdown
//! automata over a tagged alphabet.

mod builder;
pub mod enumerate;
pub mod examples;
mod format;
mod fsa;
mod nvpa;
mod pda;
mod vpa;

pub use builder::{VpaBuilder, BOTTOM};
pub use format::Automaton;
pub use fsa::{Fsa, Nfa};
pub use nvpa::{Nvpa, DEFAULT_MAX_CONFIGS};
pub use pda::{Pda, PdaConfiguration, PdaTransition};
pub use vpa::{Configuration, Run, Vpa};

pub(crate) use builder::fresh_name;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("automaton has no states")]
    NoStates,
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("unknown stack symbol {0:?}")]
    UnknownStackSymbol(String),
    #[error("transition uses a letter outside the alphabet")]
    UnknownLetter,
    #[error("transition relation is not a partial function")]
    Nondeterministic,
    #[error("expected exactly one initial state, found {0}")]
    InitialStateCount(usize),
    #[error("the bottom-of-stack symbol may not be pushed")]
    PushesBottom,
    #[error("ε-move from {state} on {top} conflicts with a lettered move")]
    EpsilonConflict { state: String, top: String },
    #[error("more than {0} ε-moves; the machine may loop")]
    EpsilonBudgetExceeded(usize),
    #[error("more than {0} simultaneous configurations")]
    ConfigurationSetOverflow(usize),
    #[error("word and automaton use different alphabets")]
    AlphabetMismatch,
    #[error("invalid automaton document: {0}")]
    Format(String),
}
