//! Closure operations on regular and visibly pushdown languages.
//!
//! Boolean operations return deterministic machines. Concatenation, star,
//! reversal and relabeling return nondeterministic ones; their membership
//! runs over configuration sets.

mod boolean;
mod gluing;
mod prefix;
mod regular;
mod relabel;
mod reverse;
mod shuffle;

pub use boolean::{vpl_complement, vpl_intersection, vpl_union};
pub use gluing::{vpl_concat, vpl_star};
pub use prefix::{vpl_prefix_member, PrefixClosure};
pub use regular::{reg_complement, reg_concat, reg_intersection, reg_prefix, reg_reverse, reg_star, reg_union};
pub use relabel::{relabel_image, PairFsa, Relabeling};
pub use reverse::vpl_reverse;
pub use shuffle::shuffle;

use thiserror::Error;

use crate::automata::AutomatonError;
use crate::nested::WordError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("operands use different alphabets")]
    AlphabetMismatch,
    #[error("alphabets share the symbol {0:?}")]
    NonDisjointAlphabets(String),
    #[error("relabeling has two outputs for input {0}")]
    NotFunctional(String),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Word(#[from] WordError),
}
