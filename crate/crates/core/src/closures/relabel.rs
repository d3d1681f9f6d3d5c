//! Finite relabelings: length- and tag-preserving word maps whose graph is
//! recognized by a finite automaton reading input/output letter pairs.

use std::sync::Arc;

use super::ClosureError;
use crate::automata::{Fsa, Nvpa, Vpa, VpaBuilder, BOTTOM};
use crate::nested::{plain_words, Alphabet, Letter, TaggedSymbol, TaggedWord};

/// A deterministic automaton over pairs (input, output) of base letters.
/// The pair (a, b) is letter `a * k + b` of the pair alphabet, named `a:b`.
#[derive(Debug, Clone)]
pub struct PairFsa {
    base: Arc<Alphabet>,
    fsa: Fsa,
}

impl PairFsa {
    pub fn pair_alphabet(base: &Alphabet) -> Arc<Alphabet> {
        let names: Vec<String> = base
            .names()
            .iter()
            .flat_map(|a| base.names().iter().map(move |b| format!("{a}:{b}")))
            .collect();
        Arc::new(Alphabet::new(names).expect("pair names are distinct"))
    }

    pub fn pair(base: &Alphabet, input: Letter, output: Letter) -> Letter {
        Letter(input.index() * base.len() + output.index())
    }

    /// Transitions are `(from, input, output, to)`.
    pub fn new(
        base: Arc<Alphabet>,
        states: Vec<String>,
        initial: usize,
        accepts: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, Letter, Letter, usize)>,
    ) -> Result<Self, ClosureError> {
        let k = base.len();
        let mut pairs = Vec::new();
        for (s, a, b, t) in transitions {
            if a.index() >= k || b.index() >= k {
                return Err(crate::automata::AutomatonError::UnknownLetter.into());
            }
            pairs.push((s, Self::pair(&base, a, b), t));
        }
        let fsa = Fsa::new(Self::pair_alphabet(&base), states, initial, accepts, pairs)?;
        Ok(PairFsa { base, fsa })
    }

    /// The letter-wise map `f` as a one-state pair automaton.
    pub fn letter_map(base: Arc<Alphabet>, f: impl Fn(Letter) -> Letter) -> Self {
        let transitions: Vec<_> = base.letters().map(|a| (0, a, f(a), 0)).collect();
        PairFsa::new(base, vec!["0".into()], 0, [0], transitions).expect("one move per input letter")
    }

    pub fn base(&self) -> &Arc<Alphabet> {
        &self.base
    }

    pub fn fsa(&self) -> &Fsa {
        &self.fsa
    }

    pub fn next(&self, state: usize, input: Letter, output: Letter) -> Option<usize> {
        self.fsa.next(state, Self::pair(&self.base, input, output))
    }
}

#[derive(Debug, Clone)]
pub struct Relabeling {
    pub pair_fsa: PairFsa,
}

impl Relabeling {
    pub fn new(pair_fsa: PairFsa) -> Self {
        Relabeling { pair_fsa }
    }

    fn outputs(&self, input: &[Letter], limit: usize) -> Vec<Vec<Letter>> {
        let p = &self.pair_fsa;
        let mut found = Vec::new();
        let mut path = Vec::with_capacity(input.len());
        fn dfs(
            p: &PairFsa,
            input: &[Letter],
            state: usize,
            path: &mut Vec<Letter>,
            found: &mut Vec<Vec<Letter>>,
            limit: usize,
        ) {
            if found.len() >= limit {
                return;
            }
            if path.len() == input.len() {
                if p.fsa.is_accepting(state) {
                    found.push(path.clone());
                }
                return;
            }
            for b in p.base.letters() {
                if let Some(t) = p.next(state, input[path.len()], b) {
                    path.push(b);
                    dfs(p, input, t, path, found, limit);
                    path.pop();
                }
            }
        }
        dfs(p, input, p.fsa.initial(), &mut path, &mut found, limit);
        found
    }

    /// Φ(tw), or None when tw is outside the domain. Tags are kept.
    pub fn apply(&self, tw: &TaggedWord) -> Option<TaggedWord> {
        let letters: Vec<Letter> = tw.symbols().iter().map(|s| s.letter).collect();
        let out = self.outputs(&letters, 1).pop()?;
        let symbols = out
            .into_iter()
            .zip(tw.symbols())
            .map(|(b, s)| TaggedSymbol::new(b, s.tag))
            .collect();
        Some(TaggedWord::new(tw.alphabet().clone(), symbols).expect("outputs are base letters"))
    }

    /// Checks that no input word of length ≤ `max_len` has two outputs.
    pub fn check_functional(&self, max_len: usize) -> Result<(), ClosureError> {
        for len in 0..=max_len {
            for w in plain_words(&self.pair_fsa.base, len) {
                if self.outputs(w.letters(), 2).len() > 1 {
                    return Err(ClosureError::NotFunctional(w.to_string()));
                }
            }
        }
        Ok(())
    }
}

/// Φ(L(m)) as a machine reading output words.
pub fn relabel_image(m: &Vpa, phi: &Relabeling) -> Result<Nvpa, ClosureError> {
    let p = &phi.pair_fsa;
    if !crate::nested::same_alphabet(m.alphabet(), &p.base) {
        return Err(ClosureError::AlphabetMismatch);
    }
    let np = p.fsa.num_states();
    let mut bld = VpaBuilder::new(m.alphabet().clone(), m.stack_name(BOTTOM));
    for name in &m.stack_names()[1..] {
        bld.stack_symbol(name);
    }
    let mut ids = Vec::with_capacity(m.num_states() * np);
    for s in m.state_names() {
        for t in p.fsa.state_names() {
            ids.push(bld.fresh_state(&format!("({s},{t})")));
        }
    }
    let id = |s: usize, t: usize| ids[s * np + t];
    for s in 0..m.num_states() {
        for sp in 0..np {
            let src = id(s, sp);
            for b in m.alphabet().letters() {
                for a in m.alphabet().letters() {
                    let Some(tp) = p.next(sp, a, b) else { continue };
                    if let Some((t, g)) = m.call(s, a) {
                        bld.call(src, b, id(t, tp), g);
                    }
                    if let Some(t) = m.internal(s, a) {
                        bld.internal(src, b, id(t, tp));
                    }
                    for g in 0..m.num_stack_symbols() {
                        if let Some(t) = m.ret(s, a, g) {
                            bld.ret(src, b, g, id(t, tp));
                        }
                    }
                }
            }
            if m.is_accepting(s) && p.fsa.is_accepting(sp) {
                bld.accept(src);
            }
        }
    }
    bld.initial(id(m.initial(), p.fsa.initial()));
    for g in 1..m.num_stack_symbols() {
        if m.is_stack_accepting(g) {
            bld.accept_stack(g);
        }
    }
    Ok(bld.build_nvpa()?)
}
