use std::sync::Arc;

use super::builder::{fresh_name, VpaBuilder, BOTTOM};
use super::nvpa::Nvpa;
use super::AutomatonError;
use crate::nested::{same_alphabet, Alphabet, Letter, Tag, TaggedSymbol, TaggedWord};

/// A deterministic visibly pushdown automaton.
///
/// Calls push exactly one stack symbol, internals leave the stack alone, and
/// returns pop the top symbol. A return with only the bottom symbol `γ0` left
/// reads `γ0` without popping it. Each transition family is a partial
/// function; a missing transition rejects.
///
/// A word is accepted when the run survives, ends in an accepting state, and
/// every stack symbol above `γ0` lies in the accepting stack set `Γ_y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vpa {
    pub(crate) alphabet: Arc<Alphabet>,
    pub(crate) states: Vec<String>,
    /// Index 0 is the bottom symbol.
    pub(crate) stack: Vec<String>,
    pub(crate) initial: usize,
    pub(crate) accepting: Vec<bool>,
    pub(crate) accept_stack: Vec<bool>,
    /// `[state * |A| + letter]`
    pub(crate) calls: Vec<Option<(usize, usize)>>,
    /// `[state * |A| + letter]`
    pub(crate) internals: Vec<Option<usize>>,
    /// `[(state * |A| + letter) * |Γ| + top]`
    pub(crate) returns: Vec<Option<usize>>,
}

/// One instantaneous configuration of a visibly pushdown run.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: usize,
    /// Number of input symbols consumed so far.
    pub position: usize,
    /// Bottom first; never empty.
    pub stack: Vec<usize>,
}

/// The outcome of a deterministic run, with its configuration sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub accepted: bool,
    pub trace: Vec<Configuration>,
    /// Position (1-based) of the symbol that had no transition, if the run died.
    pub halted_at: Option<usize>,
}

impl Vpa {
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// Size of the stack alphabet, bottom included.
    pub fn num_stack_symbols(&self) -> usize {
        self.stack.len()
    }

    pub fn state_name(&self, state: usize) -> &str {
        &self.states[state]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn stack_name(&self, symbol: usize) -> &str {
        &self.stack[symbol]
    }

    pub fn stack_names(&self) -> &[String] {
        &self.stack
    }

    pub fn bottom(&self) -> usize {
        BOTTOM
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn is_stack_accepting(&self, symbol: usize) -> bool {
        self.accept_stack[symbol]
    }

    pub fn call(&self, state: usize, letter: Letter) -> Option<(usize, usize)> {
        self.calls[state * self.alphabet.len() + letter.index()]
    }

    pub fn internal(&self, state: usize, letter: Letter) -> Option<usize> {
        self.internals[state * self.alphabet.len() + letter.index()]
    }

    pub fn ret(&self, state: usize, letter: Letter, top: usize) -> Option<usize> {
        self.returns[(state * self.alphabet.len() + letter.index()) * self.stack.len() + top]
    }

    /// Apply one symbol to `(state, stack)`; `None` when no transition exists.
    pub fn step(&self, state: usize, stack: &mut Vec<usize>, symbol: TaggedSymbol) -> Option<usize> {
        match symbol.tag {
            Tag::Call => {
                let (next, push) = self.call(state, symbol.letter)?;
                stack.push(push);
                Some(next)
            }
            Tag::Internal => self.internal(state, symbol.letter),
            Tag::Return => {
                let top = *stack.last().expect("stack holds the bottom symbol");
                let next = self.ret(state, symbol.letter, top)?;
                if top != BOTTOM {
                    stack.pop();
                }
                Some(next)
            }
        }
    }

    /// Acceptance condition on a final configuration.
    pub fn accepts_configuration(&self, state: usize, stack: &[usize]) -> bool {
        self.accepting[state] && stack[1..].iter().all(|&g| self.accept_stack[g])
    }

    /// Membership without alphabet checks; letters must lie in the alphabet.
    pub fn accepts_symbols(&self, symbols: &[TaggedSymbol]) -> bool {
        let mut stack = vec![BOTTOM];
        let mut state = self.initial;
        for &s in symbols {
            match self.step(state, &mut stack, s) {
                Some(next) => state = next,
                None => return false,
            }
        }
        self.accepts_configuration(state, &stack)
    }

    pub fn accepts(&self, word: &TaggedWord) -> Result<bool, AutomatonError> {
        self.check_alphabet(word)?;
        Ok(self.accepts_symbols(word.symbols()))
    }

    /// Deterministic run recording every configuration.
    pub fn run(&self, word: &TaggedWord) -> Result<Run, AutomatonError> {
        self.check_alphabet(word)?;
        let mut config = Configuration {
            state: self.initial,
            position: 0,
            stack: vec![BOTTOM],
        };
        let mut trace = vec![config.clone()];
        for (k, &s) in word.symbols().iter().enumerate() {
            match self.step(config.state, &mut config.stack, s) {
                Some(next) => {
                    config.state = next;
                    config.position = k + 1;
                    trace.push(config.clone());
                }
                None => {
                    return Ok(Run {
                        accepted: false,
                        trace,
                        halted_at: Some(k + 1),
                    })
                }
            }
        }
        Ok(Run {
            accepted: self.accepts_configuration(config.state, &config.stack),
            trace,
            halted_at: None,
        })
    }

    fn check_alphabet(&self, word: &TaggedWord) -> Result<(), AutomatonError> {
        if same_alphabet(&self.alphabet, word.alphabet()) {
            Ok(())
        } else {
            Err(AutomatonError::AlphabetMismatch)
        }
    }

    /// True when every transition family is total.
    pub fn is_complete(&self) -> bool {
        self.calls.iter().all(Option::is_some)
            && self.internals.iter().all(Option::is_some)
            && self.returns.iter().all(Option::is_some)
    }

    /// True when acceptance depends on the final state only (`Γ_y = Γ`).
    pub fn is_state_acceptance(&self) -> bool {
        self.accept_stack[1..].iter().all(|&b| b)
    }

    /// Add a rejecting sink so that all three transition families are total.
    pub fn complete(&self) -> Vpa {
        if self.is_complete() {
            return self.clone();
        }
        let mut m = self.clone();
        let sink = m.states.len();
        m.states.push(fresh_name(&self.states, "sink"));
        m.accepting.push(false);
        let sink_sym = m.stack.len();
        m.stack.push(fresh_name(&self.stack, "sink"));
        m.accept_stack.push(false);

        let (n, k, g) = (m.states.len(), m.alphabet.len(), m.stack.len());
        let mut calls = vec![None; n * k];
        let mut internals = vec![None; n * k];
        let mut returns = vec![None; n * k * g];
        for s in 0..n {
            for a in 0..k {
                let old = (s < sink).then(|| s * k + a);
                calls[s * k + a] = old.and_then(|i| self.calls[i]).or(Some((sink, sink_sym)));
                internals[s * k + a] = old.and_then(|i| self.internals[i]).or(Some(sink));
                for top in 0..g {
                    let old = old
                        .filter(|_| top < sink_sym)
                        .and_then(|i| self.returns[i * self.stack.len() + top]);
                    returns[(s * k + a) * g + top] = old.or(Some(sink));
                }
            }
        }
        m.calls = calls;
        m.internals = internals;
        m.returns = returns;
        m
    }

    /// An equivalent machine whose acceptance depends on the state alone.
    ///
    /// Each pushed symbol is paired with a flag saying whether everything
    /// below it is acceptable, and the flag for the current stack is carried
    /// in the state. The resulting `Γ_y` is the whole stack alphabet.
    pub fn normalize_acceptance(&self) -> Vpa {
        if self.is_state_acceptance() {
            return self.clone();
        }
        let (n, k, g) = (self.states.len(), self.alphabet.len(), self.stack.len());
        // state (q, f) -> 2q + f ; non-bottom symbol (γ, f) -> 1 + 2(γ-1) + f
        let st = |q: usize, f: bool| 2 * q + f as usize;
        let sym = |gamma: usize, f: bool| 1 + 2 * (gamma - 1) + f as usize;
        let (n2, g2) = (2 * n, 1 + 2 * (g - 1));
        let mut states = Vec::with_capacity(n2);
        for q in &self.states {
            states.push(format!("({q},0)"));
            states.push(format!("({q},1)"));
        }
        let mut stack = vec![self.stack[BOTTOM].clone()];
        for gamma in &self.stack[1..] {
            stack.push(format!("({gamma},0)"));
            stack.push(format!("({gamma},1)"));
        }
        let mut calls = vec![None; n2 * k];
        let mut internals = vec![None; n2 * k];
        let mut returns = vec![None; n2 * k * g2];
        let mut accepting = vec![false; n2];
        for q in 0..n {
            for f in [false, true] {
                let s = st(q, f);
                accepting[s] = f && self.accepting[q];
                for a in 0..k {
                    let l = Letter(a);
                    calls[s * k + a] = self
                        .call(q, l)
                        .map(|(t, gamma)| (st(t, f && self.accept_stack[gamma]), sym(gamma, f)));
                    internals[s * k + a] = self.internal(q, l).map(|t| st(t, f));
                    returns[(s * k + a) * g2 + BOTTOM] = self.ret(q, l, BOTTOM).map(|t| st(t, f));
                    for gamma in 1..g {
                        for below in [false, true] {
                            returns[(s * k + a) * g2 + sym(gamma, below)] =
                                self.ret(q, l, gamma).map(|t| st(t, below));
                        }
                    }
                }
            }
        }
        Vpa {
            alphabet: self.alphabet.clone(),
            states,
            stack,
            initial: st(self.initial, true),
            accepting,
            accept_stack: vec![true; g2],
            calls,
            internals,
            returns,
        }
    }

    /// Copy of this machine as a (singleton-initial) nondeterministic one.
    pub fn to_nvpa(&self) -> Nvpa {
        Nvpa {
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            stack: self.stack.clone(),
            initials: vec![self.initial],
            accepting: self.accepting.clone(),
            accept_stack: self.accept_stack.clone(),
            calls: self.calls.iter().map(|c| c.iter().copied().collect()).collect(),
            internals: self.internals.iter().map(|c| c.iter().copied().collect()).collect(),
            returns: self.returns.iter().map(|c| c.iter().copied().collect()).collect(),
        }
    }

    /// Re-express the machine through a builder, e.g. for serialization.
    pub fn to_builder(&self) -> VpaBuilder {
        self.to_nvpa().to_builder()
    }
}

impl TryFrom<&Nvpa> for Vpa {
    type Error = AutomatonError;

    /// Succeeds when the machine is structurally deterministic.
    fn try_from(m: &Nvpa) -> Result<Self, Self::Error> {
        if m.initials.len() != 1 {
            return Err(AutomatonError::InitialStateCount(m.initials.len()));
        }
        fn single<T: Copy>(v: &[Vec<T>]) -> Result<Vec<Option<T>>, AutomatonError> {
            v.iter()
                .map(|t| match t.as_slice() {
                    [] => Ok(None),
                    [x] => Ok(Some(*x)),
                    _ => Err(AutomatonError::Nondeterministic),
                })
                .collect()
        }
        Ok(Vpa {
            alphabet: m.alphabet.clone(),
            states: m.states.clone(),
            stack: m.stack.clone(),
            initial: m.initials[0],
            accepting: m.accepting.clone(),
            accept_stack: m.accept_stack.clone(),
            calls: single(&m.calls)?,
            internals: single(&m.internals)?,
            returns: single(&m.returns)?,
        })
    }
}
