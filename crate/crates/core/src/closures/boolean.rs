//! Union, intersection and complement of visibly pushdown languages.
//!
//! Tags fix the stack operation, so two machines reading the same tagged
//! word push and pop in lockstep; their product keeps one stack of symbol
//! pairs. Both inputs are completed and acceptance-normalized first, so the
//! product decides acceptance by state alone.

use std::collections::{HashMap, VecDeque};

use super::ClosureError;
use crate::automata::{Vpa, VpaBuilder};
use crate::nested::{same_alphabet, Letter};

struct Product<'a> {
    a: &'a Vpa,
    b: &'a Vpa,
    builder: VpaBuilder,
    states: Vec<(usize, usize)>,
    state_index: HashMap<(usize, usize), usize>,
    symbols: Vec<(usize, usize)>,
    symbol_index: HashMap<(usize, usize), usize>,
    state_queue: VecDeque<usize>,
    symbol_queue: VecDeque<usize>,
}

impl<'a> Product<'a> {
    fn state(&mut self, pair: (usize, usize)) -> usize {
        if let Some(&i) = self.state_index.get(&pair) {
            return i;
        }
        let name = format!("({},{})", self.a.state_name(pair.0), self.b.state_name(pair.1));
        let i = self.builder.fresh_state(&name);
        self.states.push(pair);
        self.state_index.insert(pair, i);
        self.state_queue.push_back(i);
        i
    }

    fn symbol(&mut self, pair: (usize, usize)) -> usize {
        if let Some(&i) = self.symbol_index.get(&pair) {
            return i;
        }
        let name = format!("({},{})", self.a.stack_name(pair.0), self.b.stack_name(pair.1));
        let i = self.builder.fresh_stack_symbol(&name);
        self.symbols.push(pair);
        self.symbol_index.insert(pair, i);
        self.symbol_queue.push_back(i);
        i
    }

    fn returns(&mut self, s: usize, g: usize) {
        let ((p, q), (x, y)) = (self.states[s], self.symbols[g]);
        for l in self.a.alphabet().letters() {
            let target = (self.a.ret(p, l, x).unwrap(), self.b.ret(q, l, y).unwrap());
            let t = self.state(target);
            self.builder.ret(s, l, g, t);
        }
    }

    fn explore(&mut self) {
        let k = self.a.alphabet().len();
        loop {
            if let Some(s) = self.state_queue.pop_front() {
                let (p, q) = self.states[s];
                for l in (0..k).map(Letter) {
                    let ((p2, x), (q2, y)) = (self.a.call(p, l).unwrap(), self.b.call(q, l).unwrap());
                    let t = self.state((p2, q2));
                    let g = self.symbol((x, y));
                    self.builder.call(s, l, t, g);
                    let t = self.state((self.a.internal(p, l).unwrap(), self.b.internal(q, l).unwrap()));
                    self.builder.internal(s, l, t);
                }
                for g in 0..self.symbols.len() {
                    self.returns(s, g);
                }
            } else if let Some(g) = self.symbol_queue.pop_front() {
                for s in 0..self.states.len() {
                    self.returns(s, g);
                }
            } else {
                break;
            }
        }
    }
}

fn product(m1: &Vpa, m2: &Vpa, accept: impl Fn(bool, bool) -> bool) -> Result<Vpa, ClosureError> {
    if !same_alphabet(m1.alphabet(), m2.alphabet()) {
        return Err(ClosureError::AlphabetMismatch);
    }
    let a = m1.complete().normalize_acceptance();
    let b = m2.complete().normalize_acceptance();
    let builder = VpaBuilder::new(a.alphabet().clone(), a.stack_name(a.bottom()));
    let mut p = Product {
        a: &a,
        b: &b,
        builder,
        states: Vec::new(),
        state_index: HashMap::new(),
        symbols: vec![(a.bottom(), b.bottom())],
        symbol_index: HashMap::from([((a.bottom(), b.bottom()), 0)]),
        state_queue: VecDeque::new(),
        symbol_queue: VecDeque::new(),
    };
    let start = p.state((a.initial(), b.initial()));
    p.explore();
    let Product { mut builder, states, symbols, .. } = p;
    builder.initial(start);
    for (i, &(x, y)) in states.iter().enumerate() {
        if accept(a.is_accepting(x), b.is_accepting(y)) {
            builder.accept(i);
        }
    }
    for g in 1..symbols.len() {
        builder.accept_stack(g);
    }
    Ok(builder.build_vpa()?)
}

pub fn vpl_union(m1: &Vpa, m2: &Vpa) -> Result<Vpa, ClosureError> {
    product(m1, m2, |x, y| x || y)
}

pub fn vpl_intersection(m1: &Vpa, m2: &Vpa) -> Result<Vpa, ClosureError> {
    product(m1, m2, |x, y| x && y)
}

/// Complete, normalize acceptance, then swap accepting and rejecting states.
pub fn vpl_complement(m: &Vpa) -> Vpa {
    let mut c = m.complete().normalize_acceptance();
    for acc in c.accepting.iter_mut() {
        *acc = !*acc;
    }
    c
}
