//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Run with
//! `cargo test -p nestword-cli --test acceptance --release`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use common::*;
use nestword::automata::examples::{ambn_fsa, anbn_pda};
use nestword::automata::{Automaton, Vpa};
use nestword::closures::*;
use nestword::groups::*;
use nestword::nested::{
    decode, encode, plain_words, tagged_words, Alphabet, Edge, Letter, MatchingRelation, NestedWord, Tag,
    TaggedSymbol, TaggedWord, Word,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("encoding bijection", c1_encoding),
        ("PDA and FSA examples", c2_examples),
        ("free group rho-bijection", c3_free_group),
        ("canonical matching choice", c4_canonical),
        ("closures against oracles", c5_closures),
        ("shuffle against interleavings", c6_shuffle),
        ("direct product", c7_direct),
        ("semidirect product", c8_semidirect),
        ("relabeling witnesses", c9_relabeling),
        ("CLI round trip", c10_cli),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail} ({secs:.1} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {why} ({secs:.1} s)", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------- helpers

fn cyclic2() -> FiniteGroup {
    let t = |a: &str, b: &str| vec![a.to_string(), b.to_string()];
    FiniteGroup::new(t("e", "t"), "e", vec![t("e", "t"), t("t", "e")]).unwrap()
}

fn names(w: &Word) -> Vec<&str> {
    w.letters().iter().map(|&l| w.alphabet().name(l)).collect()
}

/// Every matching relation on `len` positions satisfying uniqueness, built
/// edge by edge without looking at tags.
fn raw_relations(len: usize) -> Vec<MatchingRelation> {
    fn go(i: usize, len: usize, used: &mut Vec<bool>, edges: &mut Vec<Edge>, out: &mut Vec<MatchingRelation>) {
        if i > len {
            out.push(MatchingRelation::new(len, edges.iter().copied()));
            return;
        }
        if used[i] {
            return go(i + 1, len, used, edges, out);
        }
        go(i + 1, len, used, edges, out);
        for e in [Edge::pending_call(i), Edge::pending_return(i)] {
            edges.push(e);
            go(i + 1, len, used, edges, out);
            edges.pop();
        }
        for j in i + 1..=len {
            if !used[j] {
                used[j] = true;
                edges.push(Edge::matched(i, j));
                go(i + 1, len, used, edges, out);
                edges.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(1, len, &mut vec![false; len + 1], &mut Vec::new(), &mut out);
    out
}

/// Inverse of a single generator letter, looked up by name in `a`.
fn inverse_letter(spec: &GroupSpec, l: Letter) -> Letter {
    let a = spec.alphabet();
    let group_inverse = |g: &FiniteGroup, e: Letter| a.letter(g.alphabet().name(g.inverse(e))).unwrap();
    match spec {
        GroupSpec::Free(_) => Letter(l.index() ^ 1),
        GroupSpec::Finite(g) => g.inverse(l),
        GroupSpec::Direct(p) => match p.element(l) {
            Some(e) => group_inverse(&p.group, e),
            None => Letter(l.index() ^ 1),
        },
        GroupSpec::Semidirect(s) => match s.product.element(l) {
            Some(e) => group_inverse(&s.product.group, e),
            None => Letter(l.index() ^ 1),
        },
    }
}

/// u · u⁻¹ with a few cancelling pairs inserted at random positions.
fn random_trivial(rng: &mut StdRng, spec: &GroupSpec, max_len: usize) -> Vec<Letter> {
    let k = spec.alphabet().len();
    let half = rng.gen_range(0..=max_len / 2);
    let u: Vec<Letter> = (0..half).map(|_| Letter(rng.gen_range(0..k))).collect();
    let mut w = u.clone();
    w.extend(u.iter().rev().map(|&l| inverse_letter(spec, l)));
    while w.len() + 2 <= max_len && rng.gen_bool(0.3) {
        let l = Letter(rng.gen_range(0..k));
        let at = rng.gen_range(0..=w.len());
        w.insert(at, inverse_letter(spec, l));
        w.insert(at, l);
    }
    w
}

fn random_letters(rng: &mut StdRng, k: usize, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| Letter(rng.gen_range(0..k))).collect()
}

/// Evaluates a word of F_n ⋊ S_m as a pair (f, σ) with
/// (f1,σ1)(f2,σ2) = (f1·ψ(σ1)(f2), σ1σ2) and ψ(σ)(x_i) = x_σ(i).
/// Letters are read by name: `xK`, `xK'` and permutations `sD..D`.
fn semidirect_pair(word: &[&str], m: usize) -> (Vec<Letter>, Vec<usize>) {
    let mut f = Vec::new();
    let mut sigma: Vec<usize> = (0..m).collect();
    for name in word {
        if let Some(rest) = name.strip_prefix('s') {
            let tau: Vec<usize> = rest.bytes().map(|b| (b - b'1') as usize).collect();
            sigma = (0..m).map(|i| sigma[tau[i]]).collect();
        } else {
            let inv = name.ends_with('\'');
            let gen: usize = name.trim_start_matches('x').trim_end_matches('\'').parse::<usize>().unwrap() - 1;
            let gen = if gen < m { sigma[gen] } else { gen };
            f.push(Letter(2 * gen + usize::from(inv)));
        }
    }
    (f, sigma)
}

fn semidirect_trivial(word: &[&str], m: usize) -> bool {
    let (f, sigma) = semidirect_pair(word, m);
    sigma.iter().enumerate().all(|(i, &s)| i == s) && naive_trivial(&f)
}

fn count_accepting(r: &Recognizer, w: &Word) -> usize {
    enumerate_taggings(w, DEFAULT_TAGGING_BOUND).unwrap().iter().filter(|t| r.accepts(t).unwrap()).count()
}

// ---------------------------------------------------------------- criteria

fn c1_encoding() -> Outcome {
    let ab = ab();
    let mut tagged = 0usize;
    for len in 0..=6 {
        let mut count = 0;
        for tw in tagged_words(&ab, len) {
            let nw = decode(&tw);
            ensure!(nw.matching().validate().is_ok(), "decode({tw}) is not a valid nested word");
            ensure!(encode(&nw) == tw, "encode(decode({tw})) differs");
            count += 1;
        }
        ensure!(count == 6usize.pow(len as u32), "{count} tagged words of length {len}");
        tagged += count;
    }
    let mut nested = 0usize;
    for len in 0..=6 {
        let valid: Vec<MatchingRelation> = raw_relations(len).into_iter().filter(|r| r.validate().is_ok()).collect();
        ensure!(valid.len() == 3usize.pow(len as u32), "{} valid relations on {len} positions", valid.len());
        let mut codes = BTreeSet::new();
        for w in plain_words(&ab, len) {
            for rel in &valid {
                let nw = NestedWord::new(w.clone(), rel.clone()).map_err(|e| e.to_string())?;
                let tw = encode(&nw);
                ensure!(decode(&tw) == nw, "decode(encode(·)) differs on {tw}");
                codes.insert(tw.to_string());
                nested += 1;
            }
        }
        ensure!(codes.len() == 6usize.pow(len as u32), "encoding is not injective at length {len}");
    }
    Ok(format!("{tagged} tagged words and {nested} independently built nested words, length ≤ 6"))
}

fn c2_examples() -> Outcome {
    let pda = anbn_pda();
    let ab = pda.alphabet().clone();
    let word = |n: usize, k: usize| Word::parse(&ab, &format!("{}{}", "a ".repeat(n), "b ".repeat(k))).unwrap();
    for n in 0..=50 {
        ensure!(pda.run(&word(n, n), None).map_err(|e| e.to_string())?, "PDA rejects a^{n} b^{n}");
    }
    for n in 0..=20 {
        for k in (0..=20).filter(|&k| k != n) {
            ensure!(!pda.run(&word(n, k), None).map_err(|e| e.to_string())?, "PDA accepts a^{n} b^{k}");
        }
    }
    let fsa = ambn_fsa();
    let mut accepted = 0;
    for len in 0..=8 {
        for w in plain_words(fsa.alphabet(), len) {
            let expected = !names(&w).windows(2).any(|p| p == ["b", "a"]);
            ensure!(fsa.accepts(&w).unwrap() == expected, "FSA disagrees on {w}");
            accepted += usize::from(expected);
        }
    }
    // a^m b^n with m + n = L has L + 1 members
    ensure!(accepted == (1..=9).sum::<usize>(), "FSA accepted {accepted} words");
    Ok(format!("a^n b^n for n ≤ 50, 420 unequal pairs, {accepted} FSA words"))
}

fn c3_free_group() -> Outcome {
    let r = build_free_vpa(2).map_err(|e| e.to_string())?;
    let ga = GroupAlphabet::new(2).unwrap();
    let spec = GroupSpec::free(2).unwrap();
    let mut runs = 0usize;
    let mut trivial_count = 0usize;
    for len in 0..=6 {
        for w in plain_words(ga.alphabet(), len) {
            let trivial = naive_trivial(w.letters());
            let taggings = enumerate_taggings(&w, DEFAULT_TAGGING_BOUND).unwrap();
            runs += taggings.len();
            let accepted: Vec<&TaggedWord> = taggings.iter().filter(|t| r.accepts(t).unwrap()).collect();
            ensure!(accepted.len() == usize::from(trivial), "{w}: {} accepted taggings", accepted.len());
            if trivial {
                trivial_count += 1;
                let canonical = NestedWord::new(w.clone(), canonical_matching(&ga, &w).unwrap()).unwrap();
                ensure!(*accepted[0] == encode(&canonical), "{w}: accepted {} is not canonical", accepted[0]);
            }
        }
    }
    let m = r.vpa();
    let mut rng = StdRng::seed_from_u64(31);
    for i in 0..10_000 {
        let letters = if i % 2 == 0 { random_trivial(&mut rng, &spec, 10) } else { random_letters(&mut rng, 4, 10) };
        let w = Word::new(ga.alphabet().clone(), letters).unwrap();
        let trivial = naive_trivial(w.letters());
        ensure!(is_identity(&spec, &w).unwrap() == trivial, "oracle disagrees on {w}");
        let accepted = accepted_taggings(&m, &w);
        if trivial {
            let canonical = annotate(&spec, &w).unwrap();
            ensure!(r.accepts(&canonical).unwrap(), "canonical tagging {canonical} rejected");
            ensure!(accepted == [canonical], "{w}: accepted taggings {accepted:?}");
        } else {
            ensure!(accepted.is_empty(), "non-trivial {w} has an accepted tagging");
        }
    }
    Ok(format!("{runs} runs over {trivial_count} trivial words of length ≤ 6, 10^4 random words ≤ 10"))
}

fn c4_canonical() -> Outcome {
    let r = build_free_vpa(1).unwrap();
    let w = Word::parse(&r.group_alphabet, "x1 x1' x1 x1'").unwrap();
    let expected = NestedWord::new(w.clone(), MatchingRelation::new(4, [Edge::matched(1, 2), Edge::matched(3, 4)])).unwrap();
    let nested = NestedWord::new(w.clone(), MatchingRelation::new(4, [Edge::matched(1, 4), Edge::matched(2, 3)])).unwrap();
    let taggings = enumerate_taggings(&w, DEFAULT_TAGGING_BOUND).unwrap();
    ensure!(taggings.len() == 81, "{} taggings", taggings.len());
    let accepted: Vec<&TaggedWord> = taggings.iter().filter(|t| r.accepts(t).unwrap()).collect();
    ensure!(accepted == [&encode(&expected)], "accepted {accepted:?}");
    ensure!(!r.accepts(&encode(&nested)).unwrap(), "{} accepted", encode(&nested));
    Ok(format!("only {} among 81 taggings", accepted[0]))
}

fn c5_closures() -> Outcome {
    let ab = ab();
    let words = words_up_to(&ab, 6);
    let mut rng = StdRng::seed_from_u64(505);
    let pairs = 50;
    let mut checks = 0usize;
    for k in 0..pairs {
        let (m1, m2) = (random_vpa(&mut rng, &ab, 4), random_vpa(&mut rng, &ab, 4));
        let u = vpl_union(&m1, &m2).map_err(|e| e.to_string())?;
        let i = vpl_intersection(&m1, &m2).map_err(|e| e.to_string())?;
        let c = vpl_complement(&m1);
        let rev = vpl_reverse(&m1);
        let cat = vpl_concat(&m1, &m2).map_err(|e| e.to_string())?;
        let star = vpl_star(&m1);
        let pre = PrefixClosure::new(&m1);
        let pre_star = PreStar::new(&m1);
        for w in &words {
            let s = w.symbols();
            let (x, y) = (member(&m1, s), member(&m2, s));
            ensure!(u.accepts(w).unwrap() == (x || y), "pair {k}: union on {w}");
            ensure!(i.accepts(w).unwrap() == (x && y), "pair {k}: intersection on {w}");
            ensure!(c.accepts(w).unwrap() == !x, "pair {k}: complement on {w}");
            ensure!(rev.accepts(w).unwrap() == reverse_oracle(&m1, w), "pair {k}: reverse on {w}");
            ensure!(cat.accepts(w).unwrap() == concat_oracle(&m1, &m2, s), "pair {k}: concat on {w}");
            if w.len() <= 5 {
                ensure!(star.accepts(w).unwrap() == star_oracle(&m1, s), "pair {k}: star on {w}");
                checks += 1;
            }
            ensure!(pre.contains(w).unwrap() == pre_star.prefix_member(&m1, s), "pair {k}: prefix on {w}");
            checks += 6;
        }
    }
    Ok(format!("{pairs} random pairs, {checks} membership checks"))
}

/// Membership in L(m) ⋈ L(f) for disjoint alphabets, where the letters of
/// `m` come first: the interleaving is determined by the letters, so it is
/// enough to test both projections.
fn interleaving_oracle(m: &Vpa, f: &nestword::automata::Fsa, w: &TaggedWord) -> bool {
    let k = m.alphabet().len();
    let (a, b): (Vec<TaggedSymbol>, Vec<TaggedSymbol>) = w.symbols().iter().partition(|s| s.letter.index() < k);
    b.iter().all(|s| s.tag == Tag::Internal)
        && member(m, &a)
        && f.accepts_letters(&b.iter().map(|s| Letter(s.letter.index() - k)).collect::<Vec<_>>())
}

fn c6_shuffle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(606);
    let cd = Alphabet::shared(["c", "d"]).unwrap();
    let mut cases = vec![(build_free_vpa(1).unwrap().vpa(), cyclic2().cayley_fsa())];
    for _ in 0..2 {
        cases.push((random_vpa(&mut rng, &ab(), 4), random_fsa(&mut rng, &cd, 3)));
    }
    let mut checked = 0usize;
    let mut members = 0usize;
    for (m, f) in &cases {
        let s = shuffle(m, f).map_err(|e| e.to_string())?;
        for len in 0..=6 {
            for w in tagged_words(s.alphabet(), len) {
                let got = s.accepts(&w).unwrap();
                ensure!(got == interleaving_oracle(m, f, &w), "shuffle disagrees on {w}");
                checked += 1;
                members += usize::from(got);
            }
        }
    }
    Ok(format!("{} machine pairs, {checked} words, {members} members", cases.len()))
}

fn c7_direct() -> Outcome {
    let spec = GroupSpec::direct(1, cyclic2()).map_err(|e| e.to_string())?;
    let GroupSpec::Direct(product) = &spec else { unreachable!() };
    let r = build(&spec).map_err(|e| e.to_string())?;
    let m = r.vpa();
    let (mut words, mut trivial) = (0usize, 0usize);
    for len in 0..=6 {
        for w in plain_words(spec.alphabet(), len) {
            let expected = eval_direct(product, w.letters());
            // independent check: generator letters reduce, t occurs evenly
            let (free, rest): (Vec<Letter>, Vec<Letter>) = w.letters().iter().partition(|l| l.index() < 2);
            let t_count = rest.iter().filter(|l| spec.alphabet().name(**l) == "t").count();
            ensure!(expected == (naive_trivial(&free) && t_count % 2 == 0), "eval_direct wrong on {w}");
            let accepted = accepted_taggings(&m, &w);
            ensure!(!accepted.is_empty() == expected, "rho-image disagrees on {w}");
            if len <= 5 && expected {
                let n = count_accepting(&r, &w);
                ensure!(n == 1, "{w} has {n} accepted taggings");
            }
            words += 1;
            trivial += usize::from(expected);
        }
    }
    Ok(format!("{words} words over {{x1, x1', e, t}}, {trivial} trivial"))
}

/// Every accepted tagged word seen while checking F_2 ⋊ S_2, for criterion 9.
fn semidirect_witnesses() -> Result<(Vec<TaggedWord>, String), String> {
    let spec = GroupSpec::semidirect(2, 2).map_err(|e| e.to_string())?;
    let GroupSpec::Semidirect(sd) = &spec else { unreachable!() };
    let r = build(&spec).map_err(|e| e.to_string())?;
    let m = r.vpa();
    let mut witnesses = Vec::new();
    let (mut words, mut trivial) = (0usize, 0usize);
    let check = |w: &Word, exhaustive: bool, witnesses: &mut Vec<TaggedWord>| -> Result<bool, String> {
        let expected = eval_semidirect(sd, w.letters());
        ensure!(expected == semidirect_trivial(&names(w), 2), "eval_semidirect wrong on {w}");
        let accepted = accepted_taggings(&m, w);
        ensure!(!accepted.is_empty() == expected, "rho-image disagrees on {w}");
        if exhaustive {
            let n = count_accepting(&r, w);
            ensure!(n == usize::from(expected), "{w} has {n} accepted taggings");
        }
        witnesses.extend(accepted);
        Ok(expected)
    };
    for len in 0..=5 {
        for w in plain_words(spec.alphabet(), len) {
            trivial += usize::from(check(&w, len <= 4, &mut witnesses)?);
            words += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(808);
    let mut random_trivial_count = 0;
    for i in 0..10_000 {
        let letters = if i % 2 == 0 { random_trivial(&mut rng, &spec, 8) } else { random_letters(&mut rng, 6, 8) };
        let w = Word::new(spec.alphabet().clone(), letters).unwrap();
        random_trivial_count += usize::from(check(&w, false, &mut witnesses)?);
    }
    let detail = format!(
        "{words} words ≤ 5 ({trivial} trivial), 10^4 random words ≤ 8 ({random_trivial_count} trivial)"
    );
    Ok((witnesses, detail))
}

fn c8_semidirect() -> Outcome {
    semidirect_witnesses().map(|(_, detail)| detail)
}

fn c9_relabeling() -> Outcome {
    let (witnesses, _) = semidirect_witnesses()?;
    let sd = SemidirectSpec::new(2, 2).map_err(|e| e.to_string())?;
    let phi = semidirect_relabeling(&sd);
    let free = build_free_vpa(2).unwrap().vpa();
    let s2 = FiniteGroup::symmetric(2).unwrap();
    let shuffled = shuffle(&free, &s2.cayley_fsa()).map_err(|e| e.to_string())?;
    let sa: Arc<Alphabet> = shuffled.alphabet().clone();
    for w in &witnesses {
        // undo the twist: each generator letter is moved by the permutation
        // product read so far
        let mut sigma = vec![0, 1];
        let mut pre_image = Vec::new();
        for s in w.symbols() {
            let name = w.alphabet().name(s.letter);
            let letter = if let Some(rest) = name.strip_prefix('s') {
                let tau: Vec<usize> = rest.bytes().map(|b| (b - b'1') as usize).collect();
                sigma = (0..2).map(|i| sigma[tau[i]]).collect();
                sa.letter(name).unwrap()
            } else {
                let inv = name.ends_with('\'');
                let gen: usize = name[1..2].parse::<usize>().unwrap() - 1;
                let moved = format!("x{}{}", sigma[gen] + 1, if inv { "'" } else { "" });
                sa.letter(&moved).unwrap()
            };
            pre_image.push(TaggedSymbol::new(letter, s.tag));
        }
        let u = TaggedWord::new(sa.clone(), pre_image).unwrap();
        ensure!(shuffled.accepts(&u).unwrap(), "pre-image {u} of {w} is not in the shuffle");
        let image = phi.apply(&u).ok_or_else(|| format!("relabeling undefined on {u}"))?;
        ensure!(image.to_string() == w.to_string(), "Φ({u}) = {image}, expected {w}");
        ensure!(image.len() == u.len(), "length changed on {u}");
        ensure!(decode(&image).matching() == decode(&u).matching(), "matching changed on {u}");
    }
    Ok(format!("{} witnessed pairs", witnesses.len()))
}

// ---------------------------------------------------------------- CLI

struct Run {
    code: i32,
    stdout: String,
}

fn nestword(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_nestword")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

/// Random words for `check`: canonical taggings of trivial words, the same
/// with one tag changed, and random taggings. Words the CLI refuses as
/// untagged input are skipped.
fn cli_words(rng: &mut StdRng, spec: &GroupSpec, r: &Recognizer, count: usize) -> Vec<TaggedWord> {
    let fsa = matches!(r.automaton, Automaton::Fsa(_));
    let a = spec.alphabet();
    let mut out = Vec::new();
    while out.len() < count {
        let tw = match out.len() % 3 {
            0 => annotate(spec, &Word::new(a.clone(), random_trivial(rng, spec, 10)).unwrap()).unwrap(),
            1 => {
                let base = annotate(spec, &Word::new(a.clone(), random_trivial(rng, spec, 10)).unwrap()).unwrap();
                let mut s = base.into_symbols();
                if !s.is_empty() && !fsa {
                    let i = rng.gen_range(0..s.len());
                    s[i].tag = Tag::ALL[rng.gen_range(0..3)];
                } else if !fsa || s.is_empty() {
                    s.push(TaggedSymbol::internal(Letter(rng.gen_range(0..a.len()))));
                } else {
                    s[0].letter = Letter(rng.gen_range(0..a.len()));
                }
                TaggedWord::new(a.clone(), s).unwrap()
            }
            _ => {
                let letters = random_letters(rng, a.len(), 10);
                let tags: Vec<Tag> =
                    letters.iter().map(|_| if fsa { Tag::Internal } else { Tag::ALL[rng.gen_range(0..3)] }).collect();
                Word::new(a.clone(), letters).unwrap().tagged(&tags)
            }
        };
        let plain = !tw.is_empty() && tw.symbols().iter().all(|s| s.tag == Tag::Internal);
        let has_call = tw.symbols().iter().any(|s| spec.alphabet().name(s.letter).starts_with('x'));
        if fsa || !(plain && has_call) {
            out.push(tw);
        }
    }
    out
}

fn c10_cli() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let z2_table = r#""elements":["e","t"],"identity":"e","table":[["e","t"],["t","e"]]"#;
    let specs = [
        ("free", r#"{"kind":"free","n":2}"#.to_string()),
        ("finite", format!(r#"{{"kind":"finite",{z2_table}}}"#)),
        ("direct", format!(r#"{{"kind":"direct","n":1,{z2_table}}}"#)),
        ("semidirect", r#"{"kind":"semidirect","n":2,"m":2}"#.to_string()),
    ];
    let mut rng = StdRng::seed_from_u64(1010);
    let mut verdicts = 0usize;
    for (name, json) in &specs {
        let spec_path = write_file(d, &format!("{name}.json"), json);
        let aut_path = d.join(format!("{name}.aut"));
        let run = nestword(&["build", "--group", path_str(&spec_path), "--out", path_str(&aut_path)]);
        ensure!(run.code == 0, "build {name} exited {}", run.code);
        let spec = GroupSpec::from_json(json).map_err(|e| e.to_string())?;
        let r = build(&spec).map_err(|e| e.to_string())?;
        let loaded = Automaton::from_json(&std::fs::read_to_string(&aut_path).unwrap()).map_err(|e| e.to_string())?;
        ensure!(loaded.to_json() == r.automaton.to_json(), "{name}: written automaton differs from the in-memory one");
        let words = cli_words(&mut rng, &spec, &r, 1000);
        let aut = path_str(&aut_path);
        let mismatch = std::thread::scope(|scope| {
            let handles: Vec<_> = words
                .chunks(words.len().div_ceil(8))
                .map(|chunk| {
                    let r = &r;
                    scope.spawn(move || {
                        for tw in chunk {
                            let tokens = tw.tokens();
                            let mut args = vec!["check", "--automaton", aut];
                            args.extend(tokens.iter().map(String::as_str));
                            let run = nestword(&args);
                            let expected = r.accepts(tw).unwrap();
                            let want = if expected { (0, "accept") } else { (1, "reject") };
                            if run.code != want.0 || run.stdout.trim() != want.1 {
                                return Some(format!("{tw}: exit {} {:?}", run.code, run.stdout.trim()));
                            }
                        }
                        None
                    })
                })
                .collect();
            handles.into_iter().find_map(|h| h.join().unwrap())
        });
        if let Some(m) = mismatch {
            return Err(format!("{name}: {m}"));
        }
        verdicts += words.len();
    }

    let golden = golden_invocations(d);
    let n = golden.len();
    for (i, (args, code, stdout)) in golden.into_iter().enumerate() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let run = nestword(&args);
        ensure!(run.code == code, "golden {}: `{}` exited {} (want {code})", i + 1, args.join(" "), run.code);
        if let Some(s) = stdout {
            ensure!(run.stdout.contains(&s), "golden {}: `{}` printed {:?}", i + 1, args.join(" "), run.stdout);
        }
    }

    // closure round trips compared through `enum`
    let p = |s: &str| path_str(&d.join(s)).to_string();
    let enum5 = |f: &str| nestword(&["enum", "--automaton", &p(f), "--max-len", "5"]).stdout;
    let run = nestword(&["closure", "--op", "complement", "--inputs", &p("free.aut"), "--out", &p("c1.aut")]);
    ensure!(run.code == 0, "complement exited {}", run.code);
    let run = nestword(&["closure", "--op", "complement", "--inputs", &p("c1.aut"), "--out", &p("c2.aut")]);
    ensure!(run.code == 0, "second complement exited {}", run.code);
    ensure!(enum5("c2.aut") == enum5("free.aut"), "complement twice changed the language");
    let f1 = write_file(d, "f1.json", r#"{"kind":"free","n":1}"#);
    nestword(&["build", "--group", path_str(&f1), "--out", &p("f1.aut")]);
    let run = nestword(&["closure", "--op", "shuffle", "--inputs", &p("f1.aut"), &p("finite.aut"), "--out", &p("sh.aut")]);
    ensure!(run.code == 0, "shuffle exited {}", run.code);
    ensure!(enum5("sh.aut") == enum5("direct.aut"), "shuffle of F_1 and Z_2 differs from the direct product");

    Ok(format!("{verdicts} check verdicts over 4 specs, {n} golden invocations, 2 closure comparisons"))
}

/// (arguments, exit code, expected stdout fragment)
fn golden_invocations(d: &Path) -> Vec<(Vec<String>, i32, Option<String>)> {
    let p = |s: &str| path_str(&d.join(s)).to_string();
    write_file(d, "f1.json", r#"{"kind":"free","n":1}"#);
    write_file(d, "bad.json", r#"{"kind":"free","n":}"#);
    write_file(d, "sd12.json", r#"{"kind":"semidirect","n":1,"m":2}"#);
    write_file(d, "ambn.aut", &Automaton::from(ambn_fsa()).to_json());
    write_file(d, "anbn.aut", &Automaton::from(anbn_pda()).to_json());
    let g = |args: &[&str], code: i32, out: Option<&str>| {
        (args.iter().map(|s| s.to_string()).collect(), code, out.map(str::to_string))
    };
    let (free, f1, direct, sd) = (p("free.aut"), p("f1.aut"), p("direct.json"), p("semidirect.json"));
    vec![
        g(&["build", "--group", &p("f1.json"), "--out", &f1], 0, Some("states: 4")),
        g(&["build", "--group", &p("free.json"), "--out", &p("free2.aut")], 0, Some("stack symbols: 5")),
        g(&["build", "--group", &p("sd12.json"), "--out", &p("x.aut")], 2, None),
        g(&["build", "--group", &p("missing.json"), "--out", &p("x.aut")], 1, None),
        g(&["build", "--group", &p("bad.json"), "--out", &p("x.aut")], 2, None),
        g(&["check", "--automaton", &free, "<x1", "x1'>"], 0, Some("accept")),
        g(&["check", "--automaton", &free, "x1", "x1'>"], 1, Some("reject")),
        g(&["check", "--automaton", &free], 0, Some("accept")),
        g(&["check", "--automaton", &free, "x1", "x1'"], 2, None),
        g(&["check", "--automaton", &free, "<x9"], 2, None),
        g(&["check", "--automaton", &p("ambn.aut"), "a", "a", "b"], 0, Some("accept")),
        g(&["check", "--automaton", &p("anbn.aut"), "a", "b", "b"], 1, Some("reject")),
        g(&["annotate", "--group", &p("f1.json"), "x1", "x1'", "x1", "x1'"], 0, Some("<x1 x1'> <x1 x1'>")),
        g(&["annotate", "--group", &direct, "x1", "t", "x1'", "t"], 0, Some("<x1 t x1'> t")),
        g(&["annotate", "--group", &p("f1.json"), "x1"], 1, Some("not identity")),
        g(&["enum", "--automaton", &f1, "--max-len", "2"], 0, Some("ε\n<x1 x1'>\n<x1' x1>\n")),
        g(&["enum", "--automaton", &f1, "--max-len", "9"], 2, None),
        g(&["oracle", "--group", &p("free.json"), "x1", "x2", "x2'", "x1'"], 0, Some("identity")),
        g(&["oracle", "--group", &sd, "s21", "x1", "s21", "x2'"], 0, Some("identity")),
        g(&["oracle", "--group", &sd, "x1", "s21"], 1, Some("not identity")),
        g(&["closure", "--op", "complement", "--inputs", &free, &f1, "--out", &p("x.aut")], 2, None),
        g(&["closure", "--op", "prefix", "--inputs", &free, "--out", &p("x.aut")], 2, None),
        g(&["closure", "--op", "reverse", "--inputs", &f1, "--out", &p("rev.aut")], 0, Some("kind:")),
        g(&["check", "--automaton", &p("rev.aut"), "<x1'", "x1>"], 0, Some("accept")),
        g(&["check", "--automaton", &free, "--prefix", "<x1", "<x2"], 0, Some("accept")),
        g(&["frobnicate"], 2, None),
    ]
}
