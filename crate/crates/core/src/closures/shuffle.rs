//! Shuffle of a visibly pushdown language with a regular language over a
//! disjoint alphabet. Letters of the regular side are internal symbols of
//! the result; the two machines never interact.

use super::ClosureError;
use crate::automata::{Fsa, Vpa, VpaBuilder, BOTTOM};
use crate::nested::{Letter, WordError};

/// The result's alphabet lists the letters of `m` first, then those of `r`.
pub fn shuffle(m: &Vpa, r: &Fsa) -> Result<Vpa, ClosureError> {
    let alphabet = match m.alphabet().disjoint_union(r.alphabet()) {
        Ok(a) => a,
        Err(WordError::DuplicateSymbol(name)) => return Err(ClosureError::NonDisjointAlphabets(name)),
        Err(e) => return Err(ClosureError::Word(e)),
    };
    let alphabet = std::sync::Arc::new(alphabet);
    let (ka, kb) = (m.alphabet().len(), r.alphabet().len());
    let mut bld = VpaBuilder::new(alphabet, m.stack_name(BOTTOM));
    for name in &m.stack_names()[1..] {
        bld.stack_symbol(name);
    }
    let nr = r.num_states();
    let mut ids = Vec::with_capacity(m.num_states() * nr);
    for p in m.state_names() {
        for q in r.state_names() {
            ids.push(bld.fresh_state(&format!("({p},{q})")));
        }
    }
    let id = |p: usize, q: usize| ids[p * nr + q];
    for p in 0..m.num_states() {
        for q in 0..nr {
            let s = id(p, q);
            for l in (0..ka).map(Letter) {
                if let Some((t, g)) = m.call(p, l) {
                    bld.call(s, l, id(t, q), g);
                }
                if let Some(t) = m.internal(p, l) {
                    bld.internal(s, l, id(t, q));
                }
                for g in 0..m.num_stack_symbols() {
                    if let Some(t) = m.ret(p, l, g) {
                        bld.ret(s, l, g, id(t, q));
                    }
                }
            }
            for l in 0..kb {
                if let Some(t) = r.next(q, Letter(l)) {
                    bld.internal(s, Letter(ka + l), id(p, t));
                }
            }
            if m.is_accepting(p) && r.is_accepting(q) {
                bld.accept(s);
            }
        }
    }
    bld.initial(id(m.initial(), r.initial()));
    for g in 1..m.num_stack_symbols() {
        if m.is_stack_accepting(g) {
            bld.accept_stack(g);
        }
    }
    Ok(bld.build_vpa()?)
}
