use std::collections::HashSet;

use super::builder::BOTTOM;
use super::{AutomatonError, Fsa, Nvpa, Pda, Vpa};
use crate::nested::{plain_words, tagged_symbols_by_token, Tag, TaggedSymbol, TaggedWord, Word};

/// Accepted tagged words of length `≤ max_len`, ordered by length and then
/// token-lexicographically. Dead runs are pruned, so sparse languages over
/// large alphabets stay cheap.
pub fn vpa_language(m: &Vpa, max_len: usize) -> Vec<TaggedWord> {
    let symbols = tagged_symbols_by_token(m.alphabet());
    let mut buckets = vec![Vec::new(); max_len + 1];
    let mut path = Vec::new();
    vpa_dfs(m, &symbols, m.initial(), &mut vec![BOTTOM], &mut path, max_len, &mut buckets);
    flatten(m, buckets)
}

fn flatten(m: &Vpa, buckets: Vec<Vec<Vec<TaggedSymbol>>>) -> Vec<TaggedWord> {
    buckets
        .into_iter()
        .flatten()
        .map(|s| TaggedWord::new(m.alphabet().clone(), s).expect("letters come from the alphabet"))
        .collect()
}

fn vpa_dfs(
    m: &Vpa,
    symbols: &[TaggedSymbol],
    state: usize,
    stack: &mut Vec<usize>,
    path: &mut Vec<TaggedSymbol>,
    max_len: usize,
    out: &mut Vec<Vec<Vec<TaggedSymbol>>>,
) {
    if m.accepts_configuration(state, stack) {
        out[path.len()].push(path.clone());
    }
    if path.len() == max_len {
        return;
    }
    for &s in symbols {
        let saved = stack.clone();
        if let Some(next) = m.step(state, stack, s) {
            path.push(s);
            vpa_dfs(m, symbols, next, stack, path, max_len, out);
            path.pop();
        }
        *stack = saved;
    }
}

pub fn nvpa_language(m: &Nvpa, max_len: usize, max_configs: usize) -> Result<Vec<TaggedWord>, AutomatonError> {
    let symbols = tagged_symbols_by_token(m.alphabet());
    let mut buckets: Vec<Vec<Vec<TaggedSymbol>>> = vec![Vec::new(); max_len + 1];
    let start: HashSet<(usize, Vec<usize>)> = m.initials().iter().map(|&q| (q, vec![BOTTOM])).collect();
    let mut path = Vec::new();
    nvpa_dfs(m, &symbols, &start, &mut path, max_len, max_configs, &mut buckets)?;
    Ok(buckets
        .into_iter()
        .flatten()
        .map(|s| TaggedWord::new(m.alphabet().clone(), s).expect("letters come from the alphabet"))
        .collect())
}

fn nvpa_dfs(
    m: &Nvpa,
    symbols: &[TaggedSymbol],
    configs: &HashSet<(usize, Vec<usize>)>,
    path: &mut Vec<TaggedSymbol>,
    max_len: usize,
    max_configs: usize,
    out: &mut Vec<Vec<Vec<TaggedSymbol>>>,
) -> Result<(), AutomatonError> {
    if configs.iter().any(|(q, s)| m.accepts_configuration(*q, s)) {
        out[path.len()].push(path.clone());
    }
    if path.len() == max_len {
        return Ok(());
    }
    for &sym in symbols {
        let mut next = HashSet::new();
        for (q, stack) in configs {
            match sym.tag {
                Tag::Call => {
                    for &(t, push) in m.calls(*q, sym.letter) {
                        let mut s = stack.clone();
                        s.push(push);
                        next.insert((t, s));
                    }
                }
                Tag::Internal => {
                    for &t in m.internals(*q, sym.letter) {
                        next.insert((t, stack.clone()));
                    }
                }
                Tag::Return => {
                    let top = *stack.last().expect("non-empty stack");
                    let mut s = stack.clone();
                    if top != BOTTOM {
                        s.pop();
                    }
                    for &t in m.returns(*q, sym.letter, top) {
                        next.insert((t, s.clone()));
                    }
                }
            }
        }
        if next.len() > max_configs {
            return Err(AutomatonError::ConfigurationSetOverflow(max_configs));
        }
        if !next.is_empty() {
            path.push(sym);
            nvpa_dfs(m, symbols, &next, path, max_len, max_configs, out)?;
            path.pop();
        }
    }
    Ok(())
}

/// Accepted plain words of length `≤ max_len` in length-then-alphabet order.
pub fn fsa_language(m: &Fsa, max_len: usize) -> Vec<Word> {
    (0..=max_len)
        .flat_map(|len| plain_words(m.alphabet(), len))
        .filter(|w| m.accepts_letters(w.letters()))
        .collect()
}

pub fn pda_language(m: &Pda, max_len: usize) -> Result<Vec<Word>, AutomatonError> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        for w in plain_words(m.alphabet(), len) {
            if m.run(&w, None)? {
                out.push(w);
            }
        }
    }
    Ok(out)
}
