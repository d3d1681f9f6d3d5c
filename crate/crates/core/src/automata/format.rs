//! JSON serialization for all four machine kinds.
//!
//! ```json
//! {"kind": "vpa", "alphabet": ["a"], "states": ["q"], "stack_alphabet": ["⊥", "g"],
//!  "bottom": "⊥", "initial": "q", "accepts": ["q"], "accept_stack": [],
//!  "transitions": [["q", "<a", "q", "g"], ["q", "a", "q"], ["q", "a>", "g", "q"]]}
//! ```
//!
//! VPA transitions are `[state, "<a", target, push]`, `[state, "a", target]`
//! and `[state, "a>", top, target]`; an NVPA uses the same entries and lists
//! `initials`. FSA transitions are `[state, letter, target]`; PDA transitions
//! are `[state, letter-or-null, top, target, [push...]]`. The stack alphabet
//! includes the bottom symbol.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::builder::{VpaBuilder, BOTTOM};
use super::{AutomatonError, Fsa, Nvpa, Pda, Vpa};
use crate::nested::{parse_token, Alphabet, Letter, Tag, TaggedSymbol};

/// Any serializable machine.
#[derive(Debug, Clone, PartialEq)]
pub enum Automaton {
    Fsa(Fsa),
    Pda(Pda),
    Vpa(Vpa),
    Nvpa(Nvpa),
}

impl Automaton {
    pub fn kind(&self) -> &'static str {
        match self {
            Automaton::Fsa(_) => "fsa",
            Automaton::Pda(_) => "pda",
            Automaton::Vpa(_) => "vpa",
            Automaton::Nvpa(_) => "nvpa",
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        match self {
            Automaton::Fsa(m) => m.alphabet(),
            Automaton::Pda(m) => m.alphabet(),
            Automaton::Vpa(m) => m.alphabet(),
            Automaton::Nvpa(m) => m.alphabet(),
        }
    }

    pub fn num_states(&self) -> usize {
        match self {
            Automaton::Fsa(m) => m.num_states(),
            Automaton::Pda(m) => m.num_states(),
            Automaton::Vpa(m) => m.num_states(),
            Automaton::Nvpa(m) => m.num_states(),
        }
    }

    pub fn is_deterministic(&self) -> bool {
        match self {
            Automaton::Nvpa(m) => m.is_deterministic(),
            _ => true,
        }
    }

    pub fn to_json(&self) -> String {
        let doc = match self {
            Automaton::Fsa(m) => fsa_doc(m),
            Automaton::Pda(m) => pda_doc(m),
            Automaton::Vpa(m) => vp_doc(&m.to_builder(), false),
            Automaton::Nvpa(m) => vp_doc(&m.to_builder(), true),
        };
        serde_json::to_string_pretty(&doc).expect("documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, AutomatonError> {
        let doc: Document =
            serde_json::from_str(text).map_err(|e| AutomatonError::Format(e.to_string()))?;
        doc.into_automaton()
    }
}

impl From<Fsa> for Automaton {
    fn from(m: Fsa) -> Self {
        Automaton::Fsa(m)
    }
}

impl From<Pda> for Automaton {
    fn from(m: Pda) -> Self {
        Automaton::Pda(m)
    }
}

impl From<Vpa> for Automaton {
    fn from(m: Vpa) -> Self {
        Automaton::Vpa(m)
    }
}

impl From<Nvpa> for Automaton {
    fn from(m: Nvpa) -> Self {
        Automaton::Nvpa(m)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum Document {
    Fsa {
        alphabet: Vec<String>,
        states: Vec<String>,
        initial: String,
        accepts: Vec<String>,
        transitions: Vec<(String, String, String)>,
    },
    Pda {
        alphabet: Vec<String>,
        states: Vec<String>,
        stack_alphabet: Vec<String>,
        initial: String,
        bottom: String,
        accepts: Vec<String>,
        transitions: Vec<(String, Option<String>, String, String, Vec<String>)>,
    },
    Vpa {
        alphabet: Vec<String>,
        states: Vec<String>,
        stack_alphabet: Vec<String>,
        bottom: String,
        initial: String,
        accepts: Vec<String>,
        accept_stack: Vec<String>,
        transitions: Vec<Vec<String>>,
    },
    Nvpa {
        alphabet: Vec<String>,
        states: Vec<String>,
        stack_alphabet: Vec<String>,
        bottom: String,
        initials: Vec<String>,
        accepts: Vec<String>,
        accept_stack: Vec<String>,
        transitions: Vec<Vec<String>>,
    },
}

fn names_where(names: &[String], flags: &[bool]) -> Vec<String> {
    names
        .iter()
        .zip(flags)
        .filter(|(_, &f)| f)
        .map(|(n, _)| n.clone())
        .collect()
}

fn fsa_doc(m: &Fsa) -> Document {
    Document::Fsa {
        alphabet: m.alphabet.names().to_vec(),
        states: m.states.clone(),
        initial: m.states[m.initial].clone(),
        accepts: names_where(&m.states, &m.accepting),
        transitions: m
            .transitions()
            .map(|(s, a, t)| (m.states[s].clone(), m.alphabet.name(a).to_string(), m.states[t].clone()))
            .collect(),
    }
}

fn pda_doc(m: &Pda) -> Document {
    Document::Pda {
        alphabet: m.alphabet.names().to_vec(),
        states: m.states.clone(),
        stack_alphabet: m.stack.clone(),
        initial: m.states[m.initial].clone(),
        bottom: m.stack[m.bottom].clone(),
        accepts: names_where(&m.states, &m.accepting),
        transitions: m
            .transitions()
            .map(|((s, a, top), (t, push))| {
                (
                    m.states[*s].clone(),
                    a.map(|a| m.alphabet.name(a).to_string()),
                    m.stack[*top].clone(),
                    m.states[*t].clone(),
                    push.iter().map(|&p| m.stack[p].clone()).collect(),
                )
            })
            .collect(),
    }
}

fn vp_doc(b: &VpaBuilder, nondeterministic: bool) -> Document {
    let m = b.clone().build_nvpa().expect("built from a valid machine");
    let sym = |l: Letter, tag: Tag| TaggedSymbol::new(l, tag).token(&m.alphabet);
    let mut transitions = Vec::new();
    for &(s, a, t, push) in &b.calls {
        transitions.push(vec![m.states[s].clone(), sym(a, Tag::Call), m.states[t].clone(), m.stack[push].clone()]);
    }
    for &(s, a, t) in &b.internals {
        transitions.push(vec![m.states[s].clone(), sym(a, Tag::Internal), m.states[t].clone()]);
    }
    for &(s, a, top, t) in &b.returns {
        transitions.push(vec![m.states[s].clone(), sym(a, Tag::Return), m.stack[top].clone(), m.states[t].clone()]);
    }
    let alphabet = m.alphabet.names().to_vec();
    let accepts = names_where(&m.states, &m.accepting);
    let accept_stack = names_where(&m.stack, &m.accept_stack);
    let bottom = m.stack[BOTTOM].clone();
    let initials: Vec<String> = m.initials.iter().map(|&q| m.states[q].clone()).collect();
    if nondeterministic {
        Document::Nvpa {
            alphabet,
            states: m.states.clone(),
            stack_alphabet: m.stack.clone(),
            bottom,
            initials,
            accepts,
            accept_stack,
            transitions,
        }
    } else {
        Document::Vpa {
            alphabet,
            states: m.states.clone(),
            stack_alphabet: m.stack.clone(),
            bottom,
            initial: initials[0].clone(),
            accepts,
            accept_stack,
            transitions,
        }
    }
}

struct Names(HashMap<String, usize>, &'static str);

impl Names {
    fn new(names: &[String], what: &'static str) -> Result<Self, AutomatonError> {
        let mut map = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if map.insert(n.clone(), i).is_some() {
                return Err(AutomatonError::Format(format!("duplicate {what} {n:?}")));
            }
        }
        Ok(Names(map, what))
    }

    fn get(&self, name: &str) -> Result<usize, AutomatonError> {
        self.0.get(name).copied().ok_or_else(|| match self.1 {
            "state" => AutomatonError::UnknownState(name.to_string()),
            _ => AutomatonError::UnknownStackSymbol(name.to_string()),
        })
    }
}

fn letter(alphabet: &Alphabet, name: &str) -> Result<Letter, AutomatonError> {
    alphabet.letter(name).ok_or(AutomatonError::UnknownLetter)
}

fn alphabet_of(names: Vec<String>) -> Result<Arc<Alphabet>, AutomatonError> {
    Alphabet::shared(names).map_err(|e| AutomatonError::Format(e.to_string()))
}

#[allow(clippy::too_many_arguments)]
fn build_vp(
    alphabet: Vec<String>,
    states: Vec<String>,
    stack_alphabet: Vec<String>,
    bottom: String,
    initials: Vec<String>,
    accepts: Vec<String>,
    accept_stack: Vec<String>,
    transitions: Vec<Vec<String>>,
) -> Result<VpaBuilder, AutomatonError> {
    let alphabet = alphabet_of(alphabet)?;
    let state_names = Names::new(&states, "state")?;
    let stack_names = Names::new(&stack_alphabet, "stack symbol")?;
    if stack_names.get(&bottom)? != 0 {
        return Err(AutomatonError::Format("bottom must be the first stack symbol".into()));
    }
    let mut b = VpaBuilder::new(alphabet.clone(), &bottom);
    for s in &states {
        b.state(s);
    }
    for g in &stack_alphabet[1..] {
        b.stack_symbol(g);
    }
    for q in &initials {
        b.initial(state_names.get(q)?);
    }
    for q in &accepts {
        b.accept(state_names.get(q)?);
    }
    for g in &accept_stack {
        b.accept_stack(stack_names.get(g)?);
    }
    for t in &transitions {
        let bad = || AutomatonError::Format(format!("malformed transition {t:?}"));
        let token = t.get(1).ok_or_else(bad)?;
        let symbol = parse_token(&alphabet, token).map_err(|_| AutomatonError::UnknownLetter)?;
        match (symbol.tag, t.len()) {
            (Tag::Call, 4) => {
                b.call(state_names.get(&t[0])?, symbol.letter, state_names.get(&t[2])?, stack_names.get(&t[3])?);
            }
            (Tag::Internal, 3) => {
                b.internal(state_names.get(&t[0])?, symbol.letter, state_names.get(&t[2])?);
            }
            (Tag::Return, 4) => {
                b.ret(state_names.get(&t[0])?, symbol.letter, stack_names.get(&t[2])?, state_names.get(&t[3])?);
            }
            _ => return Err(bad()),
        }
    }
    Ok(b)
}

impl Document {
    fn into_automaton(self) -> Result<Automaton, AutomatonError> {
        match self {
            Document::Fsa {
                alphabet,
                states,
                initial,
                accepts,
                transitions,
            } => {
                let alphabet = alphabet_of(alphabet)?;
                let names = Names::new(&states, "state")?;
                let initial = names.get(&initial)?;
                let accepts = accepts.iter().map(|q| names.get(q)).collect::<Result<Vec<_>, _>>()?;
                let transitions = transitions
                    .iter()
                    .map(|(s, a, t)| Ok((names.get(s)?, letter(&alphabet, a)?, names.get(t)?)))
                    .collect::<Result<Vec<_>, AutomatonError>>()?;
                Ok(Automaton::Fsa(Fsa::new(alphabet, states, initial, accepts, transitions)?))
            }
            Document::Pda {
                alphabet,
                states,
                stack_alphabet,
                initial,
                bottom,
                accepts,
                transitions,
            } => {
                let alphabet = alphabet_of(alphabet)?;
                let names = Names::new(&states, "state")?;
                let stack = Names::new(&stack_alphabet, "stack symbol")?;
                let initial = names.get(&initial)?;
                let bottom = stack.get(&bottom)?;
                let accepts = accepts.iter().map(|q| names.get(q)).collect::<Result<Vec<_>, _>>()?;
                let transitions = transitions
                    .iter()
                    .map(|(s, a, top, t, push)| {
                        let a = a.as_deref().map(|a| letter(&alphabet, a)).transpose()?;
                        let push = push.iter().map(|g| stack.get(g)).collect::<Result<Vec<_>, _>>()?;
                        Ok(((names.get(s)?, a, stack.get(top)?), (names.get(t)?, push)))
                    })
                    .collect::<Result<Vec<_>, AutomatonError>>()?;
                Ok(Automaton::Pda(Pda::new(
                    alphabet,
                    states,
                    stack_alphabet,
                    initial,
                    bottom,
                    accepts,
                    transitions,
                )?))
            }
            Document::Vpa {
                alphabet,
                states,
                stack_alphabet,
                bottom,
                initial,
                accepts,
                accept_stack,
                transitions,
            } => {
                let b = build_vp(
                    alphabet,
                    states,
                    stack_alphabet,
                    bottom,
                    vec![initial],
                    accepts,
                    accept_stack,
                    transitions,
                )?;
                Ok(Automaton::Vpa(b.build_vpa()?))
            }
            Document::Nvpa {
                alphabet,
                states,
                stack_alphabet,
                bottom,
                initials,
                accepts,
                accept_stack,
                transitions,
            } => {
                let b = build_vp(
                    alphabet,
                    states,
                    stack_alphabet,
                    bottom,
                    initials,
                    accepts,
                    accept_stack,
                    transitions,
                )?;
                Ok(Automaton::Nvpa(b.build_nvpa()?))
            }
        }
    }
}
