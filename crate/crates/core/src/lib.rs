//! Nested words, visibly pushdown automata, and nested word problems for
//! groups.
//!
//! - [`nested`]: tagged words, matching relations and the encoding between them.
//! - [`automata`]: FSA, PDA, VPA and NVPA machines with their runs.
//! - [`closures`]: the regular and visibly pushdown closure operations,
//!   including shuffle with a regular language and finite relabeling.
//! - [`groups`]: word-problem oracles and recognizers for free groups,
//!   finite groups, `F_n × G` and `F_n ⋊ S_m`.

pub mod automata;
pub mod closures;
pub mod groups;
pub mod nested;
