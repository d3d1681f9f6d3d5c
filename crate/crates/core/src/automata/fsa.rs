use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use super::builder::{fresh_name, VpaBuilder};
use super::vpa::Vpa;
use super::AutomatonError;
use crate::nested::{same_alphabet, Alphabet, Letter, Word};

/// A deterministic finite-state automaton with a partial transition function.
#[derive(Debug, Clone, PartialEq)]
pub struct Fsa {
    pub(crate) alphabet: Arc<Alphabet>,
    pub(crate) states: Vec<String>,
    pub(crate) initial: usize,
    pub(crate) accepting: Vec<bool>,
    /// `[state * |A| + letter]`
    pub(crate) delta: Vec<Option<usize>>,
}

impl Fsa {
    pub fn new(
        alphabet: Arc<Alphabet>,
        states: Vec<String>,
        initial: usize,
        accepts: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, Letter, usize)>,
    ) -> Result<Self, AutomatonError> {
        let (n, k) = (states.len(), alphabet.len());
        if n == 0 {
            return Err(AutomatonError::NoStates);
        }
        if initial >= n {
            return Err(AutomatonError::UnknownState(initial.to_string()));
        }
        let mut accepting = vec![false; n];
        for q in accepts {
            *accepting
                .get_mut(q)
                .ok_or_else(|| AutomatonError::UnknownState(q.to_string()))? = true;
        }
        let mut delta = vec![None; n * k];
        for (s, a, t) in transitions {
            if s >= n || t >= n {
                return Err(AutomatonError::UnknownState(s.max(t).to_string()));
            }
            if a.index() >= k {
                return Err(AutomatonError::UnknownLetter);
            }
            match delta[s * k + a.index()] {
                Some(prev) if prev != t => return Err(AutomatonError::Nondeterministic),
                _ => delta[s * k + a.index()] = Some(t),
            }
        }
        Ok(Fsa {
            alphabet,
            states,
            initial,
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

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn next(&self, state: usize, letter: Letter) -> Option<usize> {
        self.delta[state * self.alphabet.len() + letter.index()]
    }

    pub fn accepts_letters(&self, letters: &[Letter]) -> bool {
        let mut q = self.initial;
        for &a in letters {
            match self.next(q, a) {
                Some(t) => q = t,
                None => return false,
            }
        }
        self.accepting[q]
    }

    pub fn accepts(&self, word: &Word) -> Result<bool, AutomatonError> {
        if !same_alphabet(&self.alphabet, word.alphabet()) {
            return Err(AutomatonError::AlphabetMismatch);
        }
        Ok(self.accepts_letters(word.letters()))
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(Option::is_some)
    }

    /// Add a rejecting sink so the transition function is total.
    pub fn complete(&self) -> Fsa {
        if self.is_complete() {
            return self.clone();
        }
        let mut m = self.clone();
        let sink = m.states.len();
        m.states.push(fresh_name(&self.states, "sink"));
        m.accepting.push(false);
        m.delta = self
            .delta
            .iter()
            .map(|t| t.or(Some(sink)))
            .chain(std::iter::repeat_n(Some(sink), m.alphabet.len()))
            .collect();
        m
    }

    /// The same language read as a visibly pushdown language of internal symbols.
    pub fn to_internal_vpa(&self) -> Vpa {
        let mut b = VpaBuilder::new(self.alphabet.clone(), "⊥");
        for name in &self.states {
            b.state(name);
        }
        b.initial(self.initial);
        for (q, &acc) in self.accepting.iter().enumerate() {
            if acc {
                b.accept(q);
            }
        }
        let k = self.alphabet.len();
        for (i, t) in self.delta.iter().enumerate() {
            if let Some(t) = *t {
                b.internal(i / k, Letter(i % k), t);
            }
        }
        b.build_vpa().expect("a deterministic automaton stays deterministic")
    }

    pub fn to_nfa(&self) -> Nfa {
        Nfa {
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            initials: vec![self.initial],
            accepting: self.accepting.clone(),
            delta: self.delta.iter().map(|t| t.iter().copied().collect()).collect(),
        }
    }

    pub(crate) fn transitions(&self) -> impl Iterator<Item = (usize, Letter, usize)> + '_ {
        let k = self.alphabet.len();
        self.delta
            .iter()
            .enumerate()
            .filter_map(move |(i, t)| t.map(|t| (i / k, Letter(i % k), t)))
    }
}

/// A nondeterministic finite-state automaton without ε-moves.
#[derive(Debug, Clone, PartialEq)]
pub struct Nfa {
    pub alphabet: Arc<Alphabet>,
    pub states: Vec<String>,
    pub initials: Vec<usize>,
    pub accepting: Vec<bool>,
    /// `[state * |A| + letter]`
    pub delta: Vec<Vec<usize>>,
}

impl Nfa {
    pub fn new(alphabet: Arc<Alphabet>, states: Vec<String>) -> Self {
        let (n, k) = (states.len(), alphabet.len());
        Nfa {
            alphabet,
            states,
            initials: Vec::new(),
            accepting: vec![false; n],
            delta: vec![Vec::new(); n * k],
        }
    }

    pub fn add(&mut self, from: usize, letter: Letter, to: usize) {
        let k = self.alphabet.len();
        let targets = &mut self.delta[from * k + letter.index()];
        if !targets.contains(&to) {
            targets.push(to);
        }
    }

    pub fn accepts_letters(&self, letters: &[Letter]) -> bool {
        let k = self.alphabet.len();
        let mut current: BTreeSet<usize> = self.initials.iter().copied().collect();
        for &a in letters {
            current = current
                .iter()
                .flat_map(|&q| self.delta[q * k + a.index()].iter().copied())
                .collect();
        }
        current.iter().any(|&q| self.accepting[q])
    }

    /// The same language read right to left.
    pub fn reverse(&self) -> Nfa {
        let k = self.alphabet.len();
        let mut r = Nfa::new(self.alphabet.clone(), self.states.clone());
        for (i, targets) in self.delta.iter().enumerate() {
            for &t in targets {
                r.add(t, Letter(i % k), i / k);
            }
        }
        r.initials = (0..self.states.len()).filter(|&q| self.accepting[q]).collect();
        for &q in &self.initials {
            r.accepting[q] = true;
        }
        r
    }

    /// Subset construction over reachable subsets.
    pub fn determinize(&self) -> Fsa {
        let k = self.alphabet.len();
        let start: BTreeSet<usize> = self.initials.iter().copied().collect();
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let subset = subsets[i].clone();
            if delta.len() < (i + 1) * k {
                delta.resize((i + 1) * k, None);
            }
            for a in 0..k {
                let next: BTreeSet<usize> = subset
                    .iter()
                    .flat_map(|&q| self.delta[q * k + a].iter().copied())
                    .collect();
                if next.is_empty() {
                    continue;
                }
                let j = *index.entry(next.clone()).or_insert_with(|| {
                    subsets.push(next);
                    queue.push_back(subsets.len() - 1);
                    subsets.len() - 1
                });
                delta[i * k + a] = Some(j);
            }
        }
        delta.resize(subsets.len() * k, None);
        let states = subsets
            .iter()
            .map(|s| {
                let names: Vec<&str> = s.iter().map(|&q| self.states[q].as_str()).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        let accepting = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.accepting[q]))
            .collect();
        Fsa {
            alphabet: self.alphabet.clone(),
            states,
            initial: 0,
            accepting,
            delta,
        }
    }
}
