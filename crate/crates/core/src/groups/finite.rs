use std::sync::Arc;

use super::{GroupAlphabet, GroupError};
use crate::automata::Fsa;
use crate::nested::{Alphabet, Letter};

/// A finite group given by its multiplication table. Elements are letters
/// of the group's own alphabet, in the order listed.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    alphabet: Arc<Alphabet>,
    identity: usize,
    /// table[a][b] = a·b
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn new(elements: Vec<String>, identity: &str, table: Vec<Vec<String>>) -> Result<Self, GroupError> {
        let alphabet = Arc::new(Alphabet::new(elements)?);
        let n = alphabet.len();
        let element = |name: &str| {
            alphabet
                .letter(name)
                .map(Letter::index)
                .ok_or_else(|| GroupError::InvalidTable(format!("unknown element {name:?}")))
        };
        let identity = element(identity)?;
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::InvalidTable(format!("table must be {n}×{n}")));
        }
        let table = table
            .iter()
            .map(|row| row.iter().map(|x| element(x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let g = FiniteGroup { alphabet, identity, table };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), GroupError> {
        let n = self.order();
        let name = |i: usize| self.alphabet.name(Letter(i)).to_string();
        for a in 0..n {
            if self.table[self.identity][a] != a || self.table[a][self.identity] != a {
                return Err(GroupError::InvalidTable(format!("identity law fails at {}", name(a))));
            }
            if !(0..n).any(|b| self.table[a][b] == self.identity && self.table[b][a] == self.identity) {
                return Err(GroupError::InvalidTable(format!("{} has no inverse", name(a))));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(GroupError::InvalidTable(format!(
                            "not associative at ({},{},{})",
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The symmetric group on m points, elements in lexicographic one-line
    /// order with multiplication (στ)(i) = σ(τ(i)).
    pub fn symmetric(m: usize) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::InvalidSpec("S_m needs m ≥ 1".into()));
        }
        let perms = Permutation::all(m);
        let names: Vec<String> = perms.iter().map(Permutation::name).collect();
        let index = |p: &Permutation| perms.iter().position(|q| q == p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index(&s.compose(t))).collect())
            .collect();
        Ok(FiniteGroup { alphabet: Arc::new(Alphabet::new(names)?), identity: 0, table })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn order(&self) -> usize {
        self.alphabet.len()
    }

    pub fn identity(&self) -> Letter {
        Letter(self.identity)
    }

    pub fn mul(&self, a: Letter, b: Letter) -> Letter {
        Letter(self.table[a.index()][b.index()])
    }

    pub fn inverse(&self, a: Letter) -> Letter {
        let b = (0..self.order())
            .find(|&b| self.table[a.index()][b] == self.identity)
            .expect("validated");
        Letter(b)
    }

    pub fn product(&self, letters: &[Letter]) -> Letter {
        letters.iter().fold(self.identity(), |acc, &b| self.mul(acc, b))
    }

    pub fn table_names(&self) -> Vec<Vec<String>> {
        self.table
            .iter()
            .map(|row| row.iter().map(|&x| self.alphabet.name(Letter(x)).to_string()).collect())
            .collect()
    }

    /// The Cayley automaton: states are elements, reading b multiplies on
    /// the right, and the identity is both initial and accepting.
    pub fn cayley_fsa(&self) -> Fsa {
        let n = self.order();
        let transitions: Vec<_> = (0..n)
            .flat_map(|s| (0..n).map(move |b| (s, b)))
            .map(|(s, b)| (s, Letter(b), self.table[s][b]))
            .collect();
        Fsa::new(self.alphabet.clone(), self.alphabet.names().to_vec(), self.identity, [self.identity], transitions)
            .expect("table is total")
    }
}

/// A permutation of {0…m-1}, stored as its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation((0..m).collect())
    }

    /// All permutations of m points in lexicographic one-line order.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m);
        fn rec(m: usize, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if cur.len() == m {
                out.push(Permutation(cur.clone()));
                return;
            }
            for i in 0..m {
                if !cur.contains(&i) {
                    cur.push(i);
                    rec(m, cur, out);
                    cur.pop();
                }
            }
        }
        rec(m, &mut cur, &mut out);
        out
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// One-line notation, 1-based: `s21` for the transposition of S_2.
    /// Degrees of 10 or more separate the images with underscores.
    pub fn name(&self) -> String {
        let images: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        if self.0.len() < 10 {
            format!("s{}", images.concat())
        } else {
            format!("s{}", images.join("_"))
        }
    }

    pub fn parse(name: &str) -> Option<Permutation> {
        let body = name.strip_prefix('s')?;
        let images: Vec<usize> = if body.contains('_') {
            body.split('_').map(|d| d.parse().ok()).collect::<Option<_>>()?
        } else {
            body.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?
        };
        let m = images.len();
        let perm: Vec<usize> = images.iter().map(|&i| i.wrapping_sub(1)).collect();
        let mut seen = vec![false; m];
        for &i in &perm {
            if i >= m || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        let p = Permutation(perm);
        (p.name() == name).then_some(p)
    }
}

/// ψ(σ): the automorphism of F_n permuting the first m generators,
/// x_i ↦ x_{σ(i)}, with inverses following along.
pub fn psi_action(sigma: &Permutation, ga: &GroupAlphabet, a: Letter) -> Letter {
    let (i, inverse) = (a.index() / 2, a.index() % 2);
    let j = if i < sigma.degree() { sigma.apply(i) } else { i };
    debug_assert!(j < ga.rank());
    Letter(2 * j + inverse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::enumerate::fsa_language;

    fn z(n: usize) -> FiniteGroup {
        let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let table = (0..n).map(|a| (0..n).map(|b| format!("g{}", (a + b) % n)).collect()).collect();
        FiniteGroup::new(names, "g0", table).unwrap()
    }

    #[test]
    fn cyclic_group_words() {
        let g = z(2);
        let fsa = g.cayley_fsa();
        let words: Vec<String> = fsa_language(&fsa, 2).iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["ε", "g0", "g0 g0", "g1 g1"]);
    }

    #[test]
    fn invalid_tables() {
        let e = |s: &[&str]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let bad = FiniteGroup::new(e(&["e", "t"]), "e", vec![e(&["e", "t"]), e(&["t", "t"])]);
        assert!(matches!(bad, Err(GroupError::InvalidTable(_))));
        let short = FiniteGroup::new(e(&["e", "t"]), "e", vec![e(&["e", "t"])]);
        assert!(matches!(short, Err(GroupError::InvalidTable(_))));
    }

    #[test]
    fn symmetric_group_is_valid() {
        for m in 1..=4 {
            let g = FiniteGroup::symmetric(m).unwrap();
            g.validate().unwrap();
            assert_eq!(g.order(), (1..=m).product::<usize>());
        }
        let s2 = FiniteGroup::symmetric(2).unwrap();
        assert_eq!(s2.alphabet().names(), ["s12", "s21"]);
    }

    #[test]
    fn permutation_names_round_trip() {
        for p in Permutation::all(4) {
            assert_eq!(Permutation::parse(&p.name()), Some(p));
        }
        assert_eq!(Permutation::parse("s11"), None);
        assert_eq!(Permutation::parse("x12"), None);
    }

    #[test]
    fn psi_is_an_action() {
        let ga = GroupAlphabet::new(3).unwrap();
        let swap = Permutation(vec![1, 0]);
        assert_eq!(psi_action(&swap, &ga, Letter(0)), Letter(2));
        assert_eq!(psi_action(&swap, &ga, Letter(3)), Letter(1));
        assert_eq!(psi_action(&swap, &ga, Letter(4)), Letter(4));
        let all = Permutation::all(3);
        for s in &all {
            for t in &all {
                for a in ga.alphabet().letters() {
                    assert_eq!(psi_action(&s.compose(t), &ga, a), psi_action(s, &ga, psi_action(t, &ga, a)));
                }
            }
        }
    }
}
