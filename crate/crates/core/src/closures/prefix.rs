//! Membership in the prefix closure of a visibly pushdown language.
//!
//! A tagged word u is in the closure when some extension u v is accepted.
//! After reading u the machine is in a configuration (q, γ1…γk). An
//! accepting extension first pops some of the γ's, interleaved with
//! well-matched segments, then continues over a stack whose remaining open
//! symbols may only grow by pushes that are never popped again. Both
//! phases only need the set of well-matched summaries (p, p'), which is
//! computed once.

use std::collections::VecDeque;

use crate::automata::{AutomatonError, Vpa, BOTTOM};
use crate::nested::{Letter, TaggedWord};

#[derive(Debug, Clone)]
pub struct PrefixClosure {
    vpa: Vpa,
    /// summary[p * n + p']: some well-matched word leads from p to p'.
    summary: Vec<bool>,
    /// From this state, with only accepting symbols open, an accepting
    /// configuration is reachable without popping.
    can_finish: Vec<bool>,
}

impl PrefixClosure {
    pub fn new(m: &Vpa) -> Self {
        let n = m.num_states();
        let k = m.alphabet().len();
        let mut summary = vec![false; n * n];
        for p in 0..n {
            summary[p * n + p] = true;
        }
        let mut changed = true;
        while changed {
            changed = false;
            for p in 0..n {
                for p1 in 0..n {
                    if !summary[p * n + p1] {
                        continue;
                    }
                    for l in (0..k).map(Letter) {
                        let mut add = Vec::new();
                        if let Some(t) = m.internal(p1, l) {
                            add.push(t);
                        }
                        if let Some((p2, g)) = m.call(p1, l) {
                            for p3 in 0..n {
                                if summary[p2 * n + p3] {
                                    add.extend((0..k).filter_map(|r| m.ret(p3, Letter(r), g)));
                                }
                            }
                        }
                        for t in add {
                            if !summary[p * n + t] {
                                summary[p * n + t] = true;
                                changed = true;
                            }
                        }
                    }
                }
            }
        }

        let mut can_finish: Vec<bool> = (0..n).map(|q| m.is_accepting(q)).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for p in 0..n {
                if can_finish[p] {
                    continue;
                }
                let via_summary = (0..n).any(|t| summary[p * n + t] && can_finish[t]);
                let via_call = (0..k).any(|l| {
                    m.call(p, Letter(l))
                        .is_some_and(|(t, g)| m.is_stack_accepting(g) && can_finish[t])
                });
                if via_summary || via_call {
                    can_finish[p] = true;
                    changed = true;
                }
            }
        }
        PrefixClosure { vpa: m.clone(), summary, can_finish }
    }

    pub fn vpa(&self) -> &Vpa {
        &self.vpa
    }

    pub fn contains(&self, word: &TaggedWord) -> Result<bool, AutomatonError> {
        let m = &self.vpa;
        if !crate::nested::same_alphabet(word.alphabet(), m.alphabet()) {
            return Err(AutomatonError::AlphabetMismatch);
        }
        let mut stack = vec![BOTTOM];
        let mut state = m.initial();
        for &s in word.symbols() {
            match m.step(state, &mut stack, s) {
                Some(t) => state = t,
                None => return Ok(false),
            }
        }
        Ok(self.completes(state, &stack))
    }

    /// Some continuation from configuration (state, stack) is accepted.
    fn completes(&self, state: usize, stack: &[usize]) -> bool {
        let m = &self.vpa;
        let n = m.num_states();
        let k = m.alphabet().len();
        let top = stack.len() - 1;
        // ok[j]: every symbol at heights 1..=j is accepting
        let mut ok = vec![true; stack.len()];
        for j in 1..stack.len() {
            ok[j] = ok[j - 1] && m.is_stack_accepting(stack[j]);
        }
        let mut seen = vec![false; n * stack.len()];
        let mut queue = VecDeque::from([(state, top)]);
        seen[state * stack.len() + top] = true;
        while let Some((p, j)) = queue.pop_front() {
            if ok[j] && self.can_finish[p] {
                return true;
            }
            let mut next = Vec::new();
            next.extend((0..n).filter(|&t| self.summary[p * n + t]).map(|t| (t, j)));
            for l in (0..k).map(Letter) {
                if let Some(t) = m.ret(p, l, stack[j]) {
                    next.push((t, j.saturating_sub(1)));
                }
            }
            for (t, i) in next {
                if !seen[t * stack.len() + i] {
                    seen[t * stack.len() + i] = true;
                    queue.push_back((t, i));
                }
            }
        }
        false
    }
}

/// Is `word` a prefix of some word accepted by `m`?
pub fn vpl_prefix_member(m: &Vpa, word: &TaggedWord) -> Result<bool, AutomatonError> {
    PrefixClosure::new(m).contains(word)
}
