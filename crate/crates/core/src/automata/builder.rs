use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::nvpa::Nvpa;
use super::vpa::Vpa;
use super::AutomatonError;
use crate::nested::{Alphabet, Letter};

/// Incremental construction of visibly pushdown machines by name.
///
/// States and stack symbols are interned on first use. Transitions are
/// collected as sets, so the same builder yields either a nondeterministic
/// machine or, when every family is a partial function, a deterministic one.
#[derive(Debug, Clone)]
pub struct VpaBuilder {
    alphabet: Arc<Alphabet>,
    states: Vec<String>,
    state_index: HashMap<String, usize>,
    stack: Vec<String>,
    stack_index: HashMap<String, usize>,
    pub(crate) calls: BTreeSet<(usize, Letter, usize, usize)>,
    pub(crate) internals: BTreeSet<(usize, Letter, usize)>,
    pub(crate) returns: BTreeSet<(usize, Letter, usize, usize)>,
    initials: BTreeSet<usize>,
    accepts: BTreeSet<usize>,
    accept_stack: BTreeSet<usize>,
}

pub const BOTTOM: usize = 0;

impl VpaBuilder {
    /// A builder whose stack alphabet starts with the bottom symbol `bottom`.
    pub fn new(alphabet: Arc<Alphabet>, bottom: &str) -> Self {
        let mut b = VpaBuilder {
            alphabet,
            states: Vec::new(),
            state_index: HashMap::new(),
            stack: Vec::new(),
            stack_index: HashMap::new(),
            calls: BTreeSet::new(),
            internals: BTreeSet::new(),
            returns: BTreeSet::new(),
            initials: BTreeSet::new(),
            accepts: BTreeSet::new(),
            accept_stack: BTreeSet::new(),
        };
        b.stack_symbol(bottom);
        b
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn state(&mut self, name: &str) -> usize {
        if let Some(&i) = self.state_index.get(name) {
            return i;
        }
        self.states.push(name.to_string());
        self.state_index.insert(name.to_string(), self.states.len() - 1);
        self.states.len() - 1
    }

    pub fn stack_symbol(&mut self, name: &str) -> usize {
        if let Some(&i) = self.stack_index.get(name) {
            return i;
        }
        self.stack.push(name.to_string());
        self.stack_index.insert(name.to_string(), self.stack.len() - 1);
        self.stack.len() - 1
    }

    /// Always adds a new state; `name` gets primes appended if taken.
    pub fn fresh_state(&mut self, name: &str) -> usize {
        let name = fresh_name(&self.states, name);
        self.state(&name)
    }

    /// Always adds a new stack symbol; `name` gets primes appended if taken.
    pub fn fresh_stack_symbol(&mut self, name: &str) -> usize {
        let name = fresh_name(&self.stack, name);
        self.stack_symbol(&name)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_stack_symbols(&self) -> usize {
        self.stack.len()
    }

    pub fn call(&mut self, from: usize, letter: Letter, to: usize, push: usize) -> &mut Self {
        self.calls.insert((from, letter, to, push));
        self
    }

    pub fn internal(&mut self, from: usize, letter: Letter, to: usize) -> &mut Self {
        self.internals.insert((from, letter, to));
        self
    }

    pub fn ret(&mut self, from: usize, letter: Letter, top: usize, to: usize) -> &mut Self {
        self.returns.insert((from, letter, top, to));
        self
    }

    pub fn initial(&mut self, state: usize) -> &mut Self {
        self.initials.insert(state);
        self
    }

    pub fn accept(&mut self, state: usize) -> &mut Self {
        self.accepts.insert(state);
        self
    }

    pub fn accept_stack(&mut self, symbol: usize) -> &mut Self {
        self.accept_stack.insert(symbol);
        self
    }

    fn flags(len: usize, set: &BTreeSet<usize>) -> Vec<bool> {
        let mut v = vec![false; len];
        for &i in set {
            v[i] = true;
        }
        v
    }

    fn check(&self) -> Result<(), AutomatonError> {
        if self.states.is_empty() {
            return Err(AutomatonError::NoStates);
        }
        let k = self.alphabet.len();
        let letters_ok = self
            .calls
            .iter()
            .map(|t| t.1)
            .chain(self.internals.iter().map(|t| t.1))
            .chain(self.returns.iter().map(|t| t.1))
            .all(|l| l.index() < k);
        if !letters_ok {
            return Err(AutomatonError::UnknownLetter);
        }
        if self.calls.iter().any(|&(_, _, _, push)| push == BOTTOM) {
            return Err(AutomatonError::PushesBottom);
        }
        Ok(())
    }

    pub fn build_nvpa(self) -> Result<Nvpa, AutomatonError> {
        self.check()?;
        let (n, k, g) = (self.states.len(), self.alphabet.len(), self.stack.len());
        let mut calls = vec![Vec::new(); n * k];
        let mut internals = vec![Vec::new(); n * k];
        let mut returns = vec![Vec::new(); n * k * g];
        for &(s, a, t, push) in &self.calls {
            calls[s * k + a.index()].push((t, push));
        }
        for &(s, a, t) in &self.internals {
            internals[s * k + a.index()].push(t);
        }
        for &(s, a, top, t) in &self.returns {
            returns[(s * k + a.index()) * g + top].push(t);
        }
        Ok(Nvpa {
            accepting: Self::flags(n, &self.accepts),
            accept_stack: Self::flags(g, &self.accept_stack),
            initials: self.initials.into_iter().collect(),
            alphabet: self.alphabet,
            states: self.states,
            stack: self.stack,
            calls,
            internals,
            returns,
        })
    }

    pub fn build_vpa(self) -> Result<Vpa, AutomatonError> {
        if self.initials.len() != 1 {
            return Err(AutomatonError::InitialStateCount(self.initials.len()));
        }
        Vpa::try_from(&self.build_nvpa()?)
    }
}

/// `base` or `base'`, `base''`… whichever is not already taken.
pub(crate) fn fresh_name<'a>(taken: impl IntoIterator<Item = &'a String> + Clone, base: &str) -> String {
    let mut name = base.to_string();
    while taken.clone().into_iter().any(|t| *t == name) {
        name.push('\'');
    }
    name
}
