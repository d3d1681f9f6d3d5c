use std::sync::Arc;

use super::GroupError;
use crate::nested::{Alphabet, Edge, Letter, MatchingRelation, Word};

/// Generators x1…xn and their inverses x1'…xn'. Letter 2i is x_{i+1},
/// letter 2i+1 its inverse.
#[derive(Debug, Clone)]
pub struct GroupAlphabet {
    n: usize,
    alphabet: Arc<Alphabet>,
}

impl GroupAlphabet {
    pub fn new(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidSpec("a free group needs at least one generator".into()));
        }
        let names = (1..=n).flat_map(|i| [format!("x{i}"), format!("x{i}'")]);
        Ok(GroupAlphabet { n, alphabet: Arc::new(Alphabet::new(names)?) })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn generator(&self, i: usize) -> Letter {
        Letter(2 * i)
    }

    pub fn inv(&self, a: Letter) -> Letter {
        Letter(a.index() ^ 1)
    }

    /// The letters of `w` inverted and in reverse order.
    pub fn formal_inverse(&self, w: &[Letter]) -> Vec<Letter> {
        w.iter().rev().map(|&a| self.inv(a)).collect()
    }
}

/// Cancels adjacent inverse pairs with one stack pass. Returns the reduced
/// word and the cancelled position pairs (0-based).
fn reduce(ga: &GroupAlphabet, letters: &[Letter]) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut stack: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    for (j, &a) in letters.iter().enumerate() {
        match stack.last() {
            Some(&i) if letters[i] == ga.inv(a) => {
                stack.pop();
                pairs.push((i, j));
            }
            _ => stack.push(j),
        }
    }
    (stack, pairs)
}

/// Cancelled position pairs (i, j), 0-based, in cancellation order.
pub(crate) fn reduce_pairs(ga: &GroupAlphabet, letters: &[Letter]) -> Vec<(usize, usize)> {
    reduce(ga, letters).1
}

pub fn free_reduce_letters(ga: &GroupAlphabet, letters: &[Letter]) -> Vec<Letter> {
    reduce(ga, letters).0.into_iter().map(|i| letters[i]).collect()
}

pub fn free_reduce(ga: &GroupAlphabet, w: &Word) -> Word {
    Word::new(w.alphabet().clone(), free_reduce_letters(ga, w.letters())).expect("same letters")
}

/// The matching left by stack-based free reduction: each position is linked
/// to the one that cancels it.
pub fn canonical_matching_letters(ga: &GroupAlphabet, letters: &[Letter]) -> Result<MatchingRelation, GroupError> {
    let (rest, pairs) = reduce(ga, letters);
    if !rest.is_empty() {
        return Err(GroupError::NotIdentity);
    }
    Ok(MatchingRelation::new(letters.len(), pairs.into_iter().map(|(i, j)| Edge::matched(i + 1, j + 1))))
}

pub fn canonical_matching(ga: &GroupAlphabet, w: &Word) -> Result<MatchingRelation, GroupError> {
    canonical_matching_letters(ga, w.letters())
}
