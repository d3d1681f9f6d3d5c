//! Closure operations on regular languages. Nondeterministic intermediates
//! are determinized before being returned.

use std::collections::{HashMap, VecDeque};

use super::ClosureError;
use crate::automata::{Fsa, Nfa};
use crate::nested::{same_alphabet, Letter};

fn check(m1: &Fsa, m2: &Fsa) -> Result<(), ClosureError> {
    if same_alphabet(m1.alphabet(), m2.alphabet()) {
        Ok(())
    } else {
        Err(ClosureError::AlphabetMismatch)
    }
}

fn product(m1: &Fsa, m2: &Fsa, accept: impl Fn(bool, bool) -> bool) -> Fsa {
    let (a, b) = (m1.complete(), m2.complete());
    let k = a.alphabet().len();
    let mut index = HashMap::from([((a.initial(), b.initial()), 0usize)]);
    let mut pairs = vec![(a.initial(), b.initial())];
    let mut queue = VecDeque::from([0usize]);
    let mut transitions = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (p, q) = pairs[i];
        for l in (0..k).map(Letter) {
            let next = (a.next(p, l).unwrap(), b.next(q, l).unwrap());
            let j = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            });
            transitions.push((i, l, j));
        }
    }
    let names = pairs
        .iter()
        .map(|&(p, q)| format!("({},{})", a.state_names()[p], b.state_names()[q]))
        .collect();
    let accepts = (0..pairs.len()).filter(|&i| accept(a.is_accepting(pairs[i].0), b.is_accepting(pairs[i].1)));
    Fsa::new(a.alphabet().clone(), names, 0, accepts, transitions).expect("product is deterministic")
}

pub fn reg_union(m1: &Fsa, m2: &Fsa) -> Result<Fsa, ClosureError> {
    check(m1, m2)?;
    Ok(product(m1, m2, |x, y| x || y))
}

pub fn reg_intersection(m1: &Fsa, m2: &Fsa) -> Result<Fsa, ClosureError> {
    check(m1, m2)?;
    Ok(product(m1, m2, |x, y| x && y))
}

pub fn reg_complement(m: &Fsa) -> Fsa {
    let c = m.complete();
    let accepts: Vec<usize> = (0..c.num_states()).filter(|&q| !c.is_accepting(q)).collect();
    let k = c.alphabet().len();
    let transitions: Vec<_> = (0..c.num_states())
        .flat_map(|q| (0..k).map(move |a| (q, Letter(a))))
        .map(|(q, a)| (q, a, c.next(q, a).unwrap()))
        .collect();
    Fsa::new(c.alphabet().clone(), c.state_names().to_vec(), c.initial(), accepts, transitions)
        .expect("complement is deterministic")
}

/// Disjoint union of the state sets of `m1` and `m2`, with m1 first.
fn side_by_side(m1: &Fsa, m2: &Fsa) -> (Nfa, usize) {
    let offset = m1.num_states();
    let names = m1
        .state_names()
        .iter()
        .map(|n| format!("1:{n}"))
        .chain(m2.state_names().iter().map(|n| format!("2:{n}")))
        .collect();
    let mut n = Nfa::new(m1.alphabet().clone(), names);
    let k = m1.alphabet().len();
    for (m, off) in [(m1, 0), (m2, offset)] {
        for q in 0..m.num_states() {
            for a in (0..k).map(Letter) {
                if let Some(t) = m.next(q, a) {
                    n.add(q + off, a, t + off);
                }
            }
        }
    }
    (n, offset)
}

pub fn reg_concat(m1: &Fsa, m2: &Fsa) -> Result<Fsa, ClosureError> {
    check(m1, m2)?;
    let (mut n, off) = side_by_side(m1, m2);
    let k = m1.alphabet().len();
    let start2 = m2.initial() + off;
    for q in 0..m1.num_states() {
        for a in (0..k).map(Letter) {
            if let Some(t) = m1.next(q, a) {
                if m1.is_accepting(t) {
                    n.add(q, a, start2);
                }
            }
        }
    }
    n.initials.push(m1.initial());
    if m1.is_accepting(m1.initial()) {
        n.initials.push(start2);
    }
    for q in 0..m2.num_states() {
        n.accepting[q + off] = m2.is_accepting(q);
    }
    if m2.is_accepting(m2.initial()) {
        for q in 0..m1.num_states() {
            n.accepting[q] = m1.is_accepting(q);
        }
    }
    Ok(n.determinize())
}

pub fn reg_star(m: &Fsa) -> Fsa {
    let mut names = m.state_names().to_vec();
    let start = names.len();
    names.push(crate::automata::fresh_name(m.state_names(), "start"));
    let mut n = Nfa::new(m.alphabet().clone(), names);
    let k = m.alphabet().len();
    for q in 0..m.num_states() {
        for a in (0..k).map(Letter) {
            if let Some(t) = m.next(q, a) {
                n.add(q, a, t);
                if q == m.initial() {
                    n.add(start, a, t);
                }
                if m.is_accepting(t) {
                    n.add(q, a, start);
                    if q == m.initial() {
                        n.add(start, a, start);
                    }
                }
            }
        }
        n.accepting[q] = m.is_accepting(q);
    }
    n.accepting[start] = true;
    n.initials.push(start);
    n.determinize()
}

pub fn reg_reverse(m: &Fsa) -> Fsa {
    m.to_nfa().reverse().determinize()
}

/// Every state that can still reach an accepting state becomes accepting.
pub fn reg_prefix(m: &Fsa) -> Fsa {
    let n = m.num_states();
    let k = m.alphabet().len();
    let mut live: Vec<bool> = (0..n).map(|q| m.is_accepting(q)).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for q in 0..n {
            if !live[q] && (0..k).any(|a| m.next(q, Letter(a)).is_some_and(|t| live[t])) {
                live[q] = true;
                changed = true;
            }
        }
    }
    let transitions: Vec<_> = (0..n)
        .flat_map(|q| (0..k).filter_map(move |a| m.next(q, Letter(a)).map(|t| (q, Letter(a), t))))
        .collect();
    Fsa::new(
        m.alphabet().clone(),
        m.state_names().to_vec(),
        m.initial(),
        (0..n).filter(|&q| live[q]),
        transitions,
    )
    .expect("same transitions as the input")
}
