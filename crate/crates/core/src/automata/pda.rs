use std::collections::BTreeMap;
use std::sync::Arc;

use super::AutomatonError;
use crate::nested::{same_alphabet, Alphabet, Letter, Word};

/// A deterministic pushdown automaton with ε-moves.
///
/// The stack is a word over `Γ` with its top at the end. A transition
/// `(s, a, γ) ↦ (t, χ)` replaces the top `γ` by `χ`, pushing `χ` left to right.
/// An ε-move `(s, ε, γ)` excludes every `(s, a, γ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pda {
    pub(crate) alphabet: Arc<Alphabet>,
    pub(crate) states: Vec<String>,
    pub(crate) stack: Vec<String>,
    pub(crate) initial: usize,
    pub(crate) bottom: usize,
    pub(crate) accepting: Vec<bool>,
    pub(crate) delta: BTreeMap<(usize, Option<Letter>, usize), (usize, Vec<usize>)>,
}

/// An instantaneous description `(state, remaining input, stack)`; the
/// remaining input is the suffix of the run's word starting at `position`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdaConfiguration {
    pub state: usize,
    pub position: usize,
    pub stack: Vec<usize>,
}

pub type PdaTransition = ((usize, Option<Letter>, usize), (usize, Vec<usize>));

impl Pda {
    pub fn new(
        alphabet: Arc<Alphabet>,
        states: Vec<String>,
        stack: Vec<String>,
        initial: usize,
        bottom: usize,
        accepts: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = PdaTransition>,
    ) -> Result<Self, AutomatonError> {
        let (n, g, k) = (states.len(), stack.len(), alphabet.len());
        if n == 0 {
            return Err(AutomatonError::NoStates);
        }
        if initial >= n {
            return Err(AutomatonError::UnknownState(initial.to_string()));
        }
        if bottom >= g {
            return Err(AutomatonError::UnknownStackSymbol(bottom.to_string()));
        }
        let mut accepting = vec![false; n];
        for q in accepts {
            *accepting
                .get_mut(q)
                .ok_or_else(|| AutomatonError::UnknownState(q.to_string()))? = true;
        }
        let mut delta = BTreeMap::new();
        for ((s, a, top), (t, push)) in transitions {
            if s >= n || t >= n {
                return Err(AutomatonError::UnknownState(s.max(t).to_string()));
            }
            if top >= g || push.iter().any(|&p| p >= g) {
                return Err(AutomatonError::UnknownStackSymbol(top.to_string()));
            }
            if a.is_some_and(|a| a.index() >= k) {
                return Err(AutomatonError::UnknownLetter);
            }
            if let Some(prev) = delta.insert((s, a, top), (t, push.clone())) {
                if prev != (t, push) {
                    return Err(AutomatonError::Nondeterministic);
                }
            }
        }
        for &(s, a, top) in delta.keys() {
            if a.is_some() && delta.contains_key(&(s, None, top)) {
                return Err(AutomatonError::EpsilonConflict {
                    state: states[s].clone(),
                    top: stack[top].clone(),
                });
            }
        }
        Ok(Pda {
            alphabet,
            states,
            stack,
            initial,
            bottom,
            accepting,
            delta,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_stack_symbols(&self) -> usize {
        self.stack.len()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn state_name(&self, state: usize) -> &str {
        &self.states[state]
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn initial_configuration(&self) -> PdaConfiguration {
        PdaConfiguration {
            state: self.initial,
            position: 0,
            stack: vec![self.bottom],
        }
    }

    /// The unique successor of `config` on `input`, preferring an ε-move.
    pub fn step(&self, config: &PdaConfiguration, input: &[Letter]) -> Option<PdaConfiguration> {
        let &top = config.stack.last()?;
        let (key, consumed) = match self.delta.get_key_value(&(config.state, None, top)) {
            Some((k, _)) => (*k, 0),
            None => {
                let &a = input.get(config.position)?;
                ((config.state, Some(a), top), 1)
            }
        };
        let (t, push) = self.delta.get(&key)?;
        let mut stack = config.stack.clone();
        stack.pop();
        stack.extend_from_slice(push);
        Some(PdaConfiguration {
            state: *t,
            position: config.position + consumed,
            stack,
        })
    }

    /// `10·|S|·|Γ|·(|w|+1)` ε-steps.
    pub fn default_epsilon_budget(&self, word_len: usize) -> usize {
        10 * self.states.len() * self.stack.len() * (word_len + 1)
    }

    /// Accepts when some configuration with all input consumed is in an
    /// accepting state. Exceeding `eps_budget` ε-moves signals a likely loop.
    pub fn run(&self, word: &Word, eps_budget: Option<usize>) -> Result<bool, AutomatonError> {
        if !same_alphabet(&self.alphabet, word.alphabet()) {
            return Err(AutomatonError::AlphabetMismatch);
        }
        let input = word.letters();
        let budget = eps_budget.unwrap_or_else(|| self.default_epsilon_budget(input.len()));
        let mut config = self.initial_configuration();
        let mut eps_steps = 0;
        loop {
            if config.position == input.len() && self.accepting[config.state] {
                return Ok(true);
            }
            let Some(next) = self.step(&config, input) else {
                return Ok(false);
            };
            if next.position == config.position {
                eps_steps += 1;
                if eps_steps > budget {
                    return Err(AutomatonError::EpsilonBudgetExceeded(budget));
                }
            }
            config = next;
        }
    }

    pub(crate) fn transitions(&self) -> impl Iterator<Item = (&(usize, Option<Letter>, usize), &(usize, Vec<usize>))> {
        self.delta.iter()
    }
}
