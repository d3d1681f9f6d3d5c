//! Word problems of groups as nested-word languages.
//!
//! A recognizer accepts tagged words over a group's generators; forgetting
//! the tags maps its language onto the words representing the identity.
//! The builders here cover free groups, finite groups given by a table, and
//! the direct and semidirect products of a free group with a finite group.
//! The `oracle` functions decide the word problem directly for testing.

mod finite;
mod free;
pub mod oracle;
mod recognizer;
mod spec;

pub use finite::{psi_action, FiniteGroup, Permutation};
pub use free::{canonical_matching, canonical_matching_letters, free_reduce, free_reduce_letters, GroupAlphabet};
pub use oracle::{eval_direct, eval_semidirect, is_identity};
pub use recognizer::{
    accepted_taggings, annotate, build, build_direct_product, build_finite_fsa, build_free_vpa, build_semidirect,
    enumerate_taggings, semidirect_relabeling, Recognizer, RhoContract, DEFAULT_TAGGING_BOUND,
};
pub use spec::{GroupSpec, ProductSpec, SemidirectSpec};

use thiserror::Error;

use crate::automata::AutomatonError;
use crate::closures::ClosureError;
use crate::nested::WordError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("not identity")]
    NotIdentity,
    #[error("word length {len} exceeds the tagging bound {bound}")]
    BoundExceeded { len: usize, bound: usize },
    #[error("generator and element names overlap at {0:?}")]
    NonDisjointAlphabets(String),
    #[error("S_{m} cannot act on {n} generators")]
    DegreeTooLarge { m: usize, n: usize },
    #[error("word is not over the group's alphabet")]
    AlphabetMismatch,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
}
