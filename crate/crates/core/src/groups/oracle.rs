//! Brute-force word problem evaluators. These never consult an automaton.

use super::free::free_reduce_letters;
use super::{psi_action, GroupError, GroupSpec, Permutation, ProductSpec, SemidirectSpec};
use crate::nested::{same_alphabet, Letter, Word};

/// Both projections are trivial: the generator letters reduce to ε and the
/// group elements multiply to the identity.
pub fn eval_direct(spec: &ProductSpec, letters: &[Letter]) -> bool {
    let (free, elements): (Vec<Letter>, Vec<Letter>) = letters.iter().partition(|l| spec.free_letter(**l).is_some());
    let elements: Vec<Letter> = elements.iter().map(|&l| spec.element(l).unwrap()).collect();
    free_reduce_letters(&spec.free, &free).is_empty() && spec.group.product(&elements) == spec.group.identity()
}

/// The generator letters twisted by the permutation product before them,
/// a ↦ ψ(π)(a). The word is trivial iff this reduces to ε and π ends as
/// the identity.
pub fn twisted_free_letters(spec: &SemidirectSpec, letters: &[Letter]) -> (Vec<Letter>, Permutation) {
    let mut pi = Permutation::identity(spec.degree());
    let mut twisted = Vec::new();
    for &l in letters {
        match spec.product.element(l) {
            Some(e) => pi = pi.compose(&spec.perms[e.index()]),
            None => twisted.push(psi_action(&pi, &spec.product.free, l)),
        }
    }
    (twisted, pi)
}

/// Evaluates in F_n ⋊ S_m with (f1,σ1)(f2,σ2) = (f1·ψ(σ1)(f2), σ1σ2).
pub fn eval_semidirect(spec: &SemidirectSpec, letters: &[Letter]) -> bool {
    let (twisted, pi) = twisted_free_letters(spec, letters);
    pi == Permutation::identity(spec.degree()) && free_reduce_letters(&spec.product.free, &twisted).is_empty()
}

pub fn is_identity(spec: &GroupSpec, w: &Word) -> Result<bool, GroupError> {
    if !same_alphabet(spec.alphabet(), w.alphabet()) {
        return Err(GroupError::AlphabetMismatch);
    }
    let l = w.letters();
    Ok(match spec {
        GroupSpec::Free(ga) => free_reduce_letters(ga, l).is_empty(),
        GroupSpec::Finite(g) => g.product(l) == g.identity(),
        GroupSpec::Direct(p) => eval_direct(p, l),
        GroupSpec::Semidirect(s) => eval_semidirect(s, l),
    })
}
