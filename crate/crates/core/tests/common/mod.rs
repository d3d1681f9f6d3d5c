//! Test support shared by the integration suites: random machines and
//! set-theoretic oracles that do not reuse the library's constructions.
#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use nestword::automata::{Fsa, Vpa, VpaBuilder, BOTTOM};
use nestword::nested::{tagged_words, Alphabet, Letter, Tag, TaggedSymbol, TaggedWord};
use rand::Rng;

pub fn ab() -> Arc<Alphabet> {
    Alphabet::shared(["a", "b"]).unwrap()
}

/// A random deterministic VPA with 1..=max_states states and up to two
/// stack symbols. Each transition is present with probability 0.85.
pub fn random_vpa(rng: &mut impl Rng, alphabet: &Arc<Alphabet>, max_states: usize) -> Vpa {
    let n = rng.gen_range(1..=max_states);
    let g = rng.gen_range(1..=2);
    let mut b = VpaBuilder::new(alphabet.clone(), "⊥");
    for i in 0..n {
        b.state(&format!("q{i}"));
    }
    for i in 0..g {
        b.stack_symbol(&format!("g{i}"));
    }
    let p = 0.85;
    for s in 0..n {
        for a in alphabet.letters() {
            if rng.gen_bool(p) {
                b.call(s, a, rng.gen_range(0..n), rng.gen_range(1..=g));
            }
            if rng.gen_bool(p) {
                b.internal(s, a, rng.gen_range(0..n));
            }
            for top in 0..=g {
                if rng.gen_bool(p) {
                    b.ret(s, a, top, rng.gen_range(0..n));
                }
            }
        }
        if rng.gen_bool(0.4) {
            b.accept(s);
        }
    }
    for top in 1..=g {
        if rng.gen_bool(0.5) {
            b.accept_stack(top);
        }
    }
    b.initial(0);
    b.build_vpa().unwrap()
}

pub fn random_fsa(rng: &mut impl Rng, alphabet: &Arc<Alphabet>, max_states: usize) -> Fsa {
    let n = rng.gen_range(1..=max_states);
    let names = (0..n).map(|i| format!("r{i}")).collect();
    let accepts: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let mut transitions = Vec::new();
    for s in 0..n {
        for a in alphabet.letters() {
            if rng.gen_bool(0.85) {
                transitions.push((s, a, rng.gen_range(0..n)));
            }
        }
    }
    Fsa::new(alphabet.clone(), names, 0, accepts, transitions).unwrap()
}

pub fn words_up_to(alphabet: &Arc<Alphabet>, max_len: usize) -> Vec<TaggedWord> {
    (0..=max_len).flat_map(|l| tagged_words(alphabet, l)).collect()
}

/// Runs `m` on a slice of symbols from scratch.
pub fn member(m: &Vpa, symbols: &[TaggedSymbol]) -> bool {
    m.accepts_symbols(symbols)
}

pub fn concat_oracle(m1: &Vpa, m2: &Vpa, w: &[TaggedSymbol]) -> bool {
    (0..=w.len()).any(|i| member(m1, &w[..i]) && member(m2, &w[i..]))
}

/// Factorization into non-empty members of L(m) by dynamic programming.
pub fn star_oracle(m: &Vpa, w: &[TaggedSymbol]) -> bool {
    let mut ok = vec![false; w.len() + 1];
    ok[0] = true;
    for j in 1..=w.len() {
        ok[j] = (0..j).any(|i| ok[i] && member(m, &w[i..j]));
    }
    ok[w.len()]
}

pub fn reverse_oracle(m: &Vpa, w: &TaggedWord) -> bool {
    m.accepts(&w.reverse()).unwrap()
}

/// Membership in the prefix closure decided by pre* saturation on the
/// pushdown system underlying `m` (stack words read top first).
///
/// Control states are 0..n; the automaton recognizing the accepting
/// configurations adds `n` (accepting symbols read) and `n + 1` (final,
/// after the bottom). pre* is saturated with the rule
/// ⟨p, X⟩ → ⟨p', w⟩ and p' –w→ s ⟹ p –X→ s.
pub struct PreStar {
    n: usize,
    edges: HashSet<(usize, usize, usize)>,
}

impl PreStar {
    pub fn new(m: &Vpa) -> Self {
        let n = m.num_states();
        let g = m.num_stack_symbols();
        let (acc, fin) = (n, n + 1);
        let mut edges = HashSet::new();
        for q in (0..n).filter(|&q| m.is_accepting(q)) {
            edges.insert((q, BOTTOM, fin));
            for x in (1..g).filter(|&x| m.is_stack_accepting(x)) {
                edges.insert((q, x, acc));
            }
        }
        edges.insert((acc, BOTTOM, fin));
        for x in (1..g).filter(|&x| m.is_stack_accepting(x)) {
            edges.insert((acc, x, acc));
        }
        // rules ⟨p, X⟩ → ⟨p', w⟩
        let mut rules: Vec<(usize, usize, usize, Vec<usize>)> = Vec::new();
        for p in 0..n {
            for a in m.alphabet().letters() {
                for x in 0..g {
                    if let Some((t, push)) = m.call(p, a) {
                        rules.push((p, x, t, vec![push, x]));
                    }
                    if let Some(t) = m.internal(p, a) {
                        rules.push((p, x, t, vec![x]));
                    }
                    if let Some(t) = m.ret(p, a, x) {
                        rules.push((p, x, t, if x == BOTTOM { vec![BOTTOM] } else { vec![] }));
                    }
                }
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for (p, x, t, w) in &rules {
                let mut reach = vec![*t];
                for &sym in w {
                    reach = edges
                        .iter()
                        .filter(|(s, y, _)| *y == sym && reach.contains(s))
                        .map(|e| e.2)
                        .collect();
                }
                for s in reach {
                    if edges.insert((*p, *x, s)) {
                        changed = true;
                    }
                }
            }
        }
        PreStar { n, edges }
    }

    fn accepts_configuration(&self, state: usize, stack: &[usize]) -> bool {
        let mut cur = vec![state];
        for &x in stack.iter().rev() {
            cur = self.edges.iter().filter(|(s, y, _)| *y == x && cur.contains(s)).map(|e| e.2).collect();
        }
        cur.contains(&(self.n + 1))
    }

    pub fn prefix_member(&self, m: &Vpa, w: &[TaggedSymbol]) -> bool {
        let mut stack = vec![BOTTOM];
        let mut state = m.initial();
        for &s in w {
            match m.step(state, &mut stack, s) {
                Some(t) => state = t,
                None => return false,
            }
        }
        self.accepts_configuration(state, &stack)
    }
}

/// Some extension of length ≤ `k` is accepted (a sound under-approximation
/// of prefix membership).
pub fn has_short_extension(m: &Vpa, w: &TaggedWord, k: usize) -> bool {
    let symbols: Vec<TaggedSymbol> = m
        .alphabet()
        .letters()
        .flat_map(|l| Tag::ALL.into_iter().map(move |t| TaggedSymbol::new(l, t)))
        .collect();
    fn go(m: &Vpa, state: usize, stack: &mut Vec<usize>, symbols: &[TaggedSymbol], k: usize) -> bool {
        if m.accepts_configuration(state, stack) {
            return true;
        }
        if k == 0 {
            return false;
        }
        for &s in symbols {
            let saved = stack.clone();
            if let Some(t) = m.step(state, stack, s) {
                if go(m, t, stack, symbols, k - 1) {
                    *stack = saved;
                    return true;
                }
            }
            *stack = saved;
        }
        false
    }
    let mut stack = vec![BOTTOM];
    let mut state = m.initial();
    for &s in w.symbols() {
        match m.step(state, &mut stack, s) {
            Some(t) => state = t,
            None => return false,
        }
    }
    go(m, state, &mut stack, &symbols, k)
}

/// Free reduction by repeatedly deleting the leftmost adjacent inverse pair
/// (letters 2i and 2i+1 are inverse).
pub fn naive_trivial(word: &[Letter]) -> bool {
    let mut w: Vec<usize> = word.iter().map(|l| l.index()).collect();
    loop {
        match (1..w.len()).find(|&i| w[i - 1] ^ 1 == w[i]) {
            Some(i) => {
                w.drain(i - 1..=i);
            }
            None => return w.is_empty(),
        }
    }
}
