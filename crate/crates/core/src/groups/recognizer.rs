use std::sync::Arc;

use super::free::reduce_pairs;
use super::oracle::twisted_free_letters;
use super::{psi_action, FiniteGroup, GroupAlphabet, GroupError, GroupSpec, ProductSpec, SemidirectSpec};
use crate::automata::{Automaton, AutomatonError, Vpa, VpaBuilder, BOTTOM};
use crate::closures::{relabel_image, shuffle, PairFsa, Relabeling};
use crate::nested::{Alphabet, Letter, Odometer, Tag, TaggedSymbol, TaggedWord, Word};

pub const DEFAULT_TAGGING_BOUND: usize = 12;

/// How the forgetful map behaves on a recognizer's language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoContract {
    /// Every trivial word has exactly one accepted tagging.
    Bijection,
    /// Every trivial word has at least one accepted tagging.
    Surjection,
}

#[derive(Debug, Clone)]
pub struct Recognizer {
    pub automaton: Automaton,
    pub group_alphabet: Arc<Alphabet>,
    pub rho_contract: RhoContract,
}

impl Recognizer {
    /// The recognizer as a visibly pushdown machine; a finite-group
    /// automaton reads every letter as an internal symbol.
    pub fn vpa(&self) -> Vpa {
        match &self.automaton {
            Automaton::Vpa(m) => m.clone(),
            Automaton::Fsa(m) => m.to_internal_vpa(),
            _ => unreachable!("builders produce VPAs and FSAs"),
        }
    }

    pub fn accepts(&self, tw: &TaggedWord) -> Result<bool, AutomatonError> {
        match &self.automaton {
            Automaton::Fsa(m) => {
                if tw.symbols().iter().any(|s| s.tag != Tag::Internal) {
                    return Ok(false);
                }
                m.accepts(&tw.forget())
            }
            Automaton::Vpa(m) => m.accepts(tw),
            Automaton::Nvpa(m) => m.accepts(tw),
            Automaton::Pda(_) => Err(AutomatonError::Format("a PDA reads untagged words".into())),
        }
    }
}

/// States: ε, one per letter (the letter of the innermost open call), and
/// the sink s_f. A call pushes the previous state's letter, or the blank ß
/// when nothing was open; a return must cancel the state's letter and pops
/// the previous letter back into the state.
pub fn build_free_vpa(n: usize) -> Result<Recognizer, GroupError> {
    let ga = GroupAlphabet::new(n)?;
    let alphabet = ga.alphabet().clone();
    let mut b = VpaBuilder::new(alphabet.clone(), "γ0");
    let eps = b.state("ε");
    let letter_state: Vec<usize> = alphabet.names().iter().map(|a| b.state(a)).collect();
    let sink = b.state("s_f");
    let letter_symbol: Vec<usize> = alphabet.names().iter().map(|a| b.stack_symbol(a)).collect();
    let blank = b.stack_symbol("ß");
    let symbols = b.num_stack_symbols();

    let mut pending: Vec<(usize, Option<Letter>)> = vec![(eps, None)];
    pending.extend(alphabet.letters().map(|a| (letter_state[a.index()], Some(a))));
    for &(s, p) in &pending {
        for a in alphabet.letters() {
            match p {
                Some(p) if ga.inv(p) == a => b.call(s, a, sink, blank),
                Some(p) => b.call(s, a, letter_state[a.index()], letter_symbol[p.index()]),
                None => b.call(s, a, letter_state[a.index()], blank),
            };
            b.internal(s, a, sink);
            for top in 0..symbols {
                let target = match p {
                    Some(p) if ga.inv(p) == a && top == blank => eps,
                    Some(p) if ga.inv(p) == a && top != BOTTOM => {
                        letter_state[letter_symbol.iter().position(|&g| g == top).unwrap()]
                    }
                    _ => sink,
                };
                b.ret(s, a, top, target);
            }
        }
    }
    for a in alphabet.letters() {
        b.call(sink, a, sink, blank).internal(sink, a, sink);
        for top in 0..symbols {
            b.ret(sink, a, top, sink);
        }
    }
    b.initial(eps).accept(eps);
    let vpa = b.build_vpa()?;
    Ok(Recognizer { automaton: vpa.into(), group_alphabet: alphabet, rho_contract: RhoContract::Bijection })
}

pub fn build_finite_fsa(g: &FiniteGroup) -> Recognizer {
    Recognizer {
        automaton: g.cayley_fsa().into(),
        group_alphabet: g.alphabet().clone(),
        rho_contract: RhoContract::Bijection,
    }
}

pub fn build_direct_product(spec: &ProductSpec) -> Result<Recognizer, GroupError> {
    let free = build_free_vpa(spec.free.rank())?.vpa();
    let m = shuffle(&free, &spec.group.cayley_fsa())?;
    debug_assert_eq!(m.alphabet(), spec.alphabet());
    Ok(Recognizer { automaton: m.into(), group_alphabet: spec.alphabet().clone(), rho_contract: RhoContract::Bijection })
}

/// The relabeling that untwists a shuffled word: a generator letter a read
/// after permutation product π becomes ψ(π)⁻¹(a).
pub fn semidirect_relabeling(spec: &SemidirectSpec) -> Relabeling {
    let p = &spec.product;
    let perms = &spec.perms;
    let states: Vec<String> = p.group.alphabet().names().to_vec();
    let mut transitions = Vec::new();
    for (pi, perm) in perms.iter().enumerate() {
        for l in p.alphabet().letters() {
            match p.element(l) {
                Some(sigma) => {
                    let next = p.group.mul(Letter(pi), sigma).index();
                    transitions.push((pi, l, l, next));
                }
                None => transitions.push((pi, l, psi_action(&perm.inverse(), &p.free, l), pi)),
            }
        }
    }
    let all = 0..states.len();
    let pair = PairFsa::new(p.alphabet().clone(), states, p.group.identity().index(), all, transitions)
        .expect("one move per input letter and state");
    Relabeling::new(pair)
}

pub fn build_semidirect(spec: &SemidirectSpec) -> Result<Recognizer, GroupError> {
    let p = &spec.product;
    let free = build_free_vpa(p.free.rank())?.vpa();
    let shuffled = shuffle(&free, &p.group.cayley_fsa())?;
    let image = relabel_image(&shuffled, &semidirect_relabeling(spec))?;
    let vpa = Vpa::try_from(&image)?;
    Ok(Recognizer { automaton: vpa.into(), group_alphabet: p.alphabet().clone(), rho_contract: RhoContract::Bijection })
}

pub fn build(spec: &GroupSpec) -> Result<Recognizer, GroupError> {
    match spec {
        GroupSpec::Free(ga) => build_free_vpa(ga.rank()),
        GroupSpec::Finite(g) => Ok(build_finite_fsa(g)),
        GroupSpec::Direct(p) => build_direct_product(p),
        GroupSpec::Semidirect(s) => build_semidirect(s),
    }
}

/// The canonical tagging of a trivial word: generator letters are tagged by
/// the stack-based free reduction (of the twisted letters, for a semidirect
/// product), everything else is internal.
pub fn annotate(spec: &GroupSpec, w: &Word) -> Result<TaggedWord, GroupError> {
    if !super::oracle::is_identity(spec, w)? {
        return Err(GroupError::NotIdentity);
    }
    let letters = w.letters();
    let mut tags = vec![Tag::Internal; letters.len()];
    let (ga, positions, free_letters): (&GroupAlphabet, Vec<usize>, Vec<Letter>) = match spec {
        GroupSpec::Free(ga) => (ga, (0..letters.len()).collect(), letters.to_vec()),
        GroupSpec::Finite(_) => return Ok(w.as_internal()),
        GroupSpec::Direct(p) => {
            let pos: Vec<usize> = (0..letters.len()).filter(|&i| p.free_letter(letters[i]).is_some()).collect();
            let l = pos.iter().map(|&i| letters[i]).collect();
            (&p.free, pos, l)
        }
        GroupSpec::Semidirect(s) => {
            let pos: Vec<usize> = (0..letters.len()).filter(|&i| s.product.free_letter(letters[i]).is_some()).collect();
            (&s.product.free, pos, twisted_free_letters(s, letters).0)
        }
    };
    for (i, j) in reduce_pairs(ga, &free_letters) {
        tags[positions[i]] = Tag::Call;
        tags[positions[j]] = Tag::Return;
    }
    Ok(w.tagged(&tags))
}

/// All 3^|w| taggings of `w` in lexicographic order of tags
/// (call < internal < return).
pub fn enumerate_taggings(w: &Word, bound: usize) -> Result<Vec<TaggedWord>, GroupError> {
    if w.len() > bound {
        return Err(GroupError::BoundExceeded { len: w.len(), bound });
    }
    Ok(Odometer::new(Tag::ALL.to_vec(), w.len()).map(|tags| w.tagged(&tags)).collect())
}

/// The taggings of `w` accepted by `m`, found by a search that abandons a
/// tagging as soon as the run dies.
pub fn accepted_taggings(m: &Vpa, w: &Word) -> Vec<TaggedWord> {
    fn dfs(m: &Vpa, w: &[Letter], state: usize, stack: &mut Vec<usize>, path: &mut Vec<TaggedSymbol>, out: &mut Vec<Vec<TaggedSymbol>>) {
        if path.len() == w.len() {
            if m.accepts_configuration(state, stack) {
                out.push(path.clone());
            }
            return;
        }
        for tag in Tag::ALL {
            let sym = TaggedSymbol::new(w[path.len()], tag);
            let saved = stack.clone();
            if let Some(t) = m.step(state, stack, sym) {
                path.push(sym);
                dfs(m, w, t, stack, path, out);
                path.pop();
            }
            *stack = saved;
        }
    }
    let mut out = Vec::new();
    dfs(m, w.letters(), m.initial(), &mut vec![BOTTOM], &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|s| TaggedWord::new(w.alphabet().clone(), s).expect("letters come from the word"))
        .collect()
}
