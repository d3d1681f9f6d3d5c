//! Concatenation and Kleene star of visibly pushdown languages.
//!
//! The split point of a concatenation can fall between a call and its
//! return, so a return in the second factor may pop a symbol pushed by the
//! first. Such a symbol is pending from the second factor's point of view
//! and is treated like the bottom of the stack. Star does the same for
//! every iteration, remembering on each pushed symbol whether the region it
//! opened belongs to the current iteration.

use super::ClosureError;
use crate::automata::{Nvpa, Vpa, VpaBuilder, BOTTOM};
use crate::nested::{same_alphabet, Letter};

pub fn vpl_concat(m1: &Vpa, m2: &Vpa) -> Result<Nvpa, ClosureError> {
    if !same_alphabet(m1.alphabet(), m2.alphabet()) {
        return Err(ClosureError::AlphabetMismatch);
    }
    let a = m1.normalize_acceptance();
    let b = m2.normalize_acceptance();
    let mut bld = VpaBuilder::new(a.alphabet().clone(), a.stack_name(BOTTOM));
    let sa: Vec<usize> = a.state_names().iter().map(|n| bld.fresh_state(&format!("1:{n}"))).collect();
    let sb: Vec<usize> = b.state_names().iter().map(|n| bld.fresh_state(&format!("2:{n}"))).collect();
    let mut ga = vec![BOTTOM];
    ga.extend(a.stack_names()[1..].iter().map(|n| bld.fresh_stack_symbol(&format!("1:{n}"))));
    let mut gb = vec![BOTTOM];
    gb.extend(b.stack_names()[1..].iter().map(|n| bld.fresh_stack_symbol(&format!("2:{n}"))));
    let start_b = sb[b.initial()];
    let k = a.alphabet().len();

    for q in 0..a.num_states() {
        for l in (0..k).map(Letter) {
            if let Some((t, g)) = a.call(q, l) {
                bld.call(sa[q], l, sa[t], ga[g]);
                if a.is_accepting(t) {
                    bld.call(sa[q], l, start_b, ga[g]);
                }
            }
            if let Some(t) = a.internal(q, l) {
                bld.internal(sa[q], l, sa[t]);
                if a.is_accepting(t) {
                    bld.internal(sa[q], l, start_b);
                }
            }
            for g in 0..a.num_stack_symbols() {
                if let Some(t) = a.ret(q, l, g) {
                    bld.ret(sa[q], l, ga[g], sa[t]);
                    if a.is_accepting(t) {
                        bld.ret(sa[q], l, ga[g], start_b);
                    }
                }
            }
        }
    }
    for q in 0..b.num_states() {
        for l in (0..k).map(Letter) {
            if let Some((t, g)) = b.call(q, l) {
                bld.call(sb[q], l, sb[t], gb[g]);
            }
            if let Some(t) = b.internal(q, l) {
                bld.internal(sb[q], l, sb[t]);
            }
            for g in 1..b.num_stack_symbols() {
                if let Some(t) = b.ret(q, l, g) {
                    bld.ret(sb[q], l, gb[g], sb[t]);
                }
            }
            if let Some(t) = b.ret(q, l, BOTTOM) {
                for &g in &ga {
                    bld.ret(sb[q], l, g, sb[t]);
                }
            }
        }
    }

    bld.initial(sa[a.initial()]);
    if a.is_accepting(a.initial()) {
        bld.initial(start_b);
    }
    for q in 0..b.num_states() {
        if b.is_accepting(q) {
            bld.accept(sb[q]);
        }
    }
    if b.is_accepting(b.initial()) {
        for q in 0..a.num_states() {
            if a.is_accepting(q) {
                bld.accept(sa[q]);
            }
        }
    }
    for g in 1..bld.num_stack_symbols() {
        bld.accept_stack(g);
    }
    Ok(bld.build_nvpa()?)
}

pub fn vpl_star(m: &Vpa) -> Nvpa {
    let a = m.normalize_acceptance();
    let (n, k, g) = (a.num_states(), a.alphabet().len(), a.num_stack_symbols());
    let mut bld = VpaBuilder::new(a.alphabet().clone(), a.stack_name(BOTTOM));
    // state[q][e]: e says the current iteration has not pushed anything
    // that is still open.
    let state: Vec<[usize; 2]> = a
        .state_names()
        .iter()
        .map(|q| [bld.fresh_state(&format!("({q},open)")), bld.fresh_state(&format!("({q},flat)"))])
        .collect();
    let start = bld.fresh_state("start");
    let mut symbol = vec![[BOTTOM; 2]; g];
    for (i, name) in a.stack_names().iter().enumerate().skip(1) {
        symbol[i] = [
            bld.fresh_stack_symbol(&format!("({name},open)")),
            bld.fresh_stack_symbol(&format!("({name},flat)")),
        ];
    }
    let every_symbol: Vec<usize> = (0..bld.num_stack_symbols()).collect();

    // (source, flat) pairs; start behaves like the initial state with an
    // empty iteration.
    let mut sources: Vec<(usize, usize, usize)> = Vec::new();
    for q in 0..n {
        sources.push((state[q][0], q, 0));
        sources.push((state[q][1], q, 1));
    }
    sources.push((start, a.initial(), 1));

    let land = |t: usize, e: usize| {
        let mut v = vec![state[t][e]];
        if a.is_accepting(t) {
            v.push(start);
        }
        v
    };

    for &(src, q, e) in &sources {
        for l in (0..k).map(Letter) {
            if let Some((t, push)) = a.call(q, l) {
                for dst in land(t, 0) {
                    bld.call(src, l, dst, symbol[push][e]);
                }
            }
            if let Some(t) = a.internal(q, l) {
                for dst in land(t, e) {
                    bld.internal(src, l, dst);
                }
            }
            if e == 0 {
                for top in 1..g {
                    if let Some(t) = a.ret(q, l, top) {
                        for s in 0..2 {
                            for dst in land(t, s) {
                                bld.ret(src, l, symbol[top][s], dst);
                            }
                        }
                    }
                }
            } else if let Some(t) = a.ret(q, l, BOTTOM) {
                for dst in land(t, 1) {
                    for &top in &every_symbol {
                        bld.ret(src, l, top, dst);
                    }
                }
            }
        }
    }

    bld.initial(start).accept(start);
    for q in 0..n {
        if a.is_accepting(q) {
            bld.accept(state[q][0]).accept(state[q][1]);
        }
    }
    for &s in &every_symbol[1..] {
        bld.accept_stack(s);
    }
    bld.build_nvpa().expect("star construction is well formed")
}
