//! Nested words and their tagged-alphabet encoding.
//!
//! A nested word is a plain word together with a matching relation linking
//! call positions to return positions. Tagging each letter as a call, an
//! internal symbol, or a return gives an equivalent linear form; the two
//! directions are [`encode`] and [`decode`]. The tagged form is the one
//! automata consume, so it is the canonical in-memory representation.
//!
//! Token syntax: `<a` is a call on `a`, `a>` a return, `a` internal.

mod alphabet;
mod matching;
mod word;

pub use alphabet::{Alphabet, Letter};
pub(crate) use alphabet::same_alphabet;
pub use matching::{
    decode, encode, matching_of, validate_matching, Edge, Endpoint, MatchingRelation, NestedWord,
};
pub(crate) use word::Odometer;
pub use word::{
    parse_token, plain_words, tagged_symbols_by_token, tagged_words, Tag, TaggedSymbol, TaggedWord,
    Word,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate symbol name {0:?}")]
    DuplicateSymbol(String),
    #[error("invalid symbol name {0:?}")]
    InvalidSymbolName(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("expected a plain letter, found tagged token {0:?}")]
    UnexpectedTag(String),
    #[error("letter index {0} is outside the alphabet")]
    LetterOutOfRange(usize),
    #[error("words are over different alphabets")]
    AlphabetMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("edge {edge} has an endpoint outside 1..{len}")]
    IndexOutOfRange { edge: Edge, len: usize },
    #[error("edge {0} is malformed")]
    MalformedEdge(Edge),
    #[error("edge {0} does not go forward")]
    NotForward(Edge),
    #[error("position {position} is used by both {first} and {second}")]
    NotUnique {
        position: usize,
        first: Edge,
        second: Edge,
    },
    #[error("edges {first} and {second} cross")]
    Crossing { first: Edge, second: Edge },
    #[error("word has length {word} but matching is over {matching} positions")]
    LengthMismatch { word: usize, matching: usize },
}
