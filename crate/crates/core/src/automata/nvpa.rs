use std::collections::HashSet;
use std::sync::Arc;

use super::builder::{VpaBuilder, BOTTOM};
use super::AutomatonError;
use crate::nested::{same_alphabet, Alphabet, Letter, Tag, TaggedSymbol, TaggedWord};

/// Default bound on the number of simultaneous configurations in a run.
pub const DEFAULT_MAX_CONFIGS: usize = 1_000_000;

/// A nondeterministic visibly pushdown automaton.
///
/// Same shape and acceptance condition as [`Vpa`](super::Vpa), with
/// set-valued transition families and a set of initial states.
#[derive(Debug, Clone, PartialEq)]
pub struct Nvpa {
    pub(crate) alphabet: Arc<Alphabet>,
    pub(crate) states: Vec<String>,
    pub(crate) stack: Vec<String>,
    pub(crate) initials: Vec<usize>,
    pub(crate) accepting: Vec<bool>,
    pub(crate) accept_stack: Vec<bool>,
    pub(crate) calls: Vec<Vec<(usize, usize)>>,
    pub(crate) internals: Vec<Vec<usize>>,
    pub(crate) returns: Vec<Vec<usize>>,
}

impl Nvpa {
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_stack_symbols(&self) -> usize {
        self.stack.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn stack_names(&self) -> &[String] {
        &self.stack
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn is_stack_accepting(&self, symbol: usize) -> bool {
        self.accept_stack[symbol]
    }

    pub fn calls(&self, state: usize, letter: Letter) -> &[(usize, usize)] {
        &self.calls[state * self.alphabet.len() + letter.index()]
    }

    pub fn internals(&self, state: usize, letter: Letter) -> &[usize] {
        &self.internals[state * self.alphabet.len() + letter.index()]
    }

    pub fn returns(&self, state: usize, letter: Letter, top: usize) -> &[usize] {
        &self.returns[(state * self.alphabet.len() + letter.index()) * self.stack.len() + top]
    }

    /// True when the machine could be read as a deterministic one.
    pub fn is_deterministic(&self) -> bool {
        self.initials.len() == 1
            && self.calls.iter().all(|t| t.len() <= 1)
            && self.internals.iter().all(|t| t.len() <= 1)
            && self.returns.iter().all(|t| t.len() <= 1)
    }

    pub fn accepts_configuration(&self, state: usize, stack: &[usize]) -> bool {
        self.accepting[state] && stack[1..].iter().all(|&g| self.accept_stack[g])
    }

    /// Every configuration reachable after one more symbol.
    fn successors(
        &self,
        configs: &HashSet<(usize, Vec<usize>)>,
        symbol: TaggedSymbol,
        max_configs: usize,
    ) -> Result<HashSet<(usize, Vec<usize>)>, AutomatonError> {
        let mut next = HashSet::new();
        for (state, stack) in configs {
            match symbol.tag {
                Tag::Call => {
                    for &(t, push) in self.calls(*state, symbol.letter) {
                        let mut s = stack.clone();
                        s.push(push);
                        next.insert((t, s));
                    }
                }
                Tag::Internal => {
                    for &t in self.internals(*state, symbol.letter) {
                        next.insert((t, stack.clone()));
                    }
                }
                Tag::Return => {
                    let top = *stack.last().expect("stack holds the bottom symbol");
                    let targets = self.returns(*state, symbol.letter, top);
                    if !targets.is_empty() {
                        let mut s = stack.clone();
                        if top != BOTTOM {
                            s.pop();
                        }
                        for &t in targets {
                            next.insert((t, s.clone()));
                        }
                    }
                }
            }
            if next.len() > max_configs {
                return Err(AutomatonError::ConfigurationSetOverflow(max_configs));
            }
        }
        Ok(next)
    }

    /// Membership with an explicit bound on the configuration set.
    pub fn accepts_symbols_with_cap(
        &self,
        symbols: &[TaggedSymbol],
        max_configs: usize,
    ) -> Result<bool, AutomatonError> {
        let mut configs: HashSet<(usize, Vec<usize>)> =
            self.initials.iter().map(|&q| (q, vec![BOTTOM])).collect();
        for &s in symbols {
            if configs.is_empty() {
                return Ok(false);
            }
            configs = self.successors(&configs, s, max_configs)?;
        }
        Ok(configs.iter().any(|(q, stack)| self.accepts_configuration(*q, stack)))
    }

    pub fn accepts_symbols(&self, symbols: &[TaggedSymbol]) -> Result<bool, AutomatonError> {
        self.accepts_symbols_with_cap(symbols, DEFAULT_MAX_CONFIGS)
    }

    pub fn accepts_with_cap(&self, word: &TaggedWord, max_configs: usize) -> Result<bool, AutomatonError> {
        if !same_alphabet(&self.alphabet, word.alphabet()) {
            return Err(AutomatonError::AlphabetMismatch);
        }
        self.accepts_symbols_with_cap(word.symbols(), max_configs)
    }

    pub fn accepts(&self, word: &TaggedWord) -> Result<bool, AutomatonError> {
        self.accepts_with_cap(word, DEFAULT_MAX_CONFIGS)
    }

    pub fn to_builder(&self) -> VpaBuilder {
        let mut b = VpaBuilder::new(self.alphabet.clone(), &self.stack[BOTTOM]);
        for name in &self.states {
            b.state(name);
        }
        for name in &self.stack[1..] {
            b.stack_symbol(name);
        }
        let (k, g) = (self.alphabet.len(), self.stack.len());
        for s in 0..self.states.len() {
            for a in 0..k {
                let l = Letter(a);
                for &(t, push) in &self.calls[s * k + a] {
                    b.call(s, l, t, push);
                }
                for &t in &self.internals[s * k + a] {
                    b.internal(s, l, t);
                }
                for top in 0..g {
                    for &t in &self.returns[(s * k + a) * g + top] {
                        b.ret(s, l, top, t);
                    }
                }
            }
        }
        for &q in &self.initials {
            b.initial(q);
        }
        for (q, &acc) in self.accepting.iter().enumerate() {
            if acc {
                b.accept(q);
            }
        }
        for (g, &acc) in self.accept_stack.iter().enumerate() {
            if acc {
                b.accept_stack(g);
            }
        }
        b
    }
}
