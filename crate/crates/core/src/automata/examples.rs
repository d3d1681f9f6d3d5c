//! The two textbook machines over `{a, b}`: a pushdown automaton for
//! `{aⁿbⁿ}` and a finite automaton for `{aᵐbⁿ}`.

use super::{Fsa, Pda};
use crate::nested::{Alphabet, Letter};

const A: Letter = Letter(0);
const B: Letter = Letter(1);

/// States `s0 s1 s2 sy sf`, stack `{0, 1}` with bottom `0`, accepting `{s0, sy}`.
///
/// `(s_i, a, i) ↦ (s1, i1)`, `(s_i, b, 1) ↦ (s2, ε)` for `i ∈ {1, 2}`,
/// `(s2, ε, 0) ↦ (sy, ε)`, and every other lettered move goes to `sf`
/// leaving the stack unchanged.
pub fn anbn_pda() -> Pda {
    let alphabet = Alphabet::shared(["a", "b"]).expect("valid alphabet");
    let states = ["s0", "s1", "s2", "sy", "sf"].map(String::from).to_vec();
    let stack = ["0", "1"].map(String::from).to_vec();
    let (s0, s1, s2, sy, sf) = (0, 1, 2, 3, 4);
    let mut transitions = vec![
        ((s0, Some(A), 0), (s1, vec![0, 1])),
        ((s1, Some(A), 1), (s1, vec![1, 1])),
        ((s1, Some(B), 1), (s2, vec![])),
        ((s2, Some(B), 1), (s2, vec![])),
        ((s2, None, 0), (sy, vec![])),
    ];
    for s in [s0, s1, s2, sy, sf] {
        for x in [A, B] {
            for top in [0, 1] {
                let taken = transitions
                    .iter()
                    .any(|((ts, tx, tg), _)| *ts == s && *tg == top && (*tx == Some(x) || tx.is_none()));
                if !taken {
                    transitions.push(((s, Some(x), top), (sf, vec![top])));
                }
            }
        }
    }
    Pda::new(alphabet, states, stack, s0, 0, [s0, sy], transitions).expect("valid PDA")
}

/// States `s0 s1 s2 sf`: read some `a`s, then some `b`s; an `a` after a `b`
/// falls into the fail state `sf`.
pub fn ambn_fsa() -> Fsa {
    let alphabet = Alphabet::shared(["a", "b"]).expect("valid alphabet");
    let states = ["s0", "s1", "s2", "sf"].map(String::from).to_vec();
    let (s0, s1, s2, sf) = (0, 1, 2, 3);
    Fsa::new(
        alphabet,
        states,
        s0,
        [s0, s1, s2],
        [
            (s0, A, s1),
            (s0, B, s2),
            (s1, A, s1),
            (s1, B, s2),
            (s2, B, s2),
            (s2, A, sf),
            (sf, A, sf),
            (sf, B, sf),
        ],
    )
    .expect("valid FSA")
}
