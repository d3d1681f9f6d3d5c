use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupAlphabet, GroupError, Permutation};
use crate::nested::{Alphabet, Letter, WordError};

/// F_n together with a finite group G. The combined alphabet lists the
/// generators and inverses first, then the elements of G.
#[derive(Debug, Clone)]
pub struct ProductSpec {
    pub free: GroupAlphabet,
    pub group: FiniteGroup,
    alphabet: Arc<Alphabet>,
}

impl ProductSpec {
    pub fn new(free: GroupAlphabet, group: FiniteGroup) -> Result<Self, GroupError> {
        let alphabet = match free.alphabet().disjoint_union(group.alphabet()) {
            Ok(a) => Arc::new(a),
            Err(WordError::DuplicateSymbol(name)) => return Err(GroupError::NonDisjointAlphabets(name)),
            Err(e) => return Err(e.into()),
        };
        Ok(ProductSpec { free, group, alphabet })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Some(a) for a generator letter, None for a group element.
    pub fn free_letter(&self, l: Letter) -> Option<Letter> {
        (l.index() < self.free.alphabet().len()).then_some(l)
    }

    /// The element of G named by a combined-alphabet letter.
    pub fn element(&self, l: Letter) -> Option<Letter> {
        l.index().checked_sub(self.free.alphabet().len()).map(Letter)
    }
}

/// F_n ⋊ S_m, where S_m permutes the first m generators.
#[derive(Debug, Clone)]
pub struct SemidirectSpec {
    pub product: ProductSpec,
    pub perms: Vec<Permutation>,
}

impl SemidirectSpec {
    pub fn new(n: usize, m: usize) -> Result<Self, GroupError> {
        if m > n {
            return Err(GroupError::DegreeTooLarge { m, n });
        }
        let product = ProductSpec::new(GroupAlphabet::new(n)?, FiniteGroup::symmetric(m)?)?;
        Ok(SemidirectSpec { product, perms: Permutation::all(m) })
    }

    pub fn degree(&self) -> usize {
        self.perms[0].degree()
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.product.alphabet()
    }
}

#[derive(Debug, Clone)]
pub enum GroupSpec {
    Free(GroupAlphabet),
    Finite(FiniteGroup),
    Direct(ProductSpec),
    Semidirect(SemidirectSpec),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    identity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<String>>>,
}

impl RawSpec {
    fn n(&self) -> Result<usize, GroupError> {
        self.n.ok_or_else(|| GroupError::InvalidSpec(format!("{} spec needs n", self.kind)))
    }

    fn finite(&self) -> Result<FiniteGroup, GroupError> {
        match (&self.m, &self.elements, &self.identity, &self.table) {
            (Some(m), None, None, None) => FiniteGroup::symmetric(*m),
            (None, Some(elements), Some(identity), Some(table)) => {
                FiniteGroup::new(elements.clone(), identity, table.clone())
            }
            _ => Err(GroupError::InvalidSpec(
                "a finite group is given either by m or by elements, identity and table".into(),
            )),
        }
    }
}

impl GroupSpec {
    pub fn free(n: usize) -> Result<Self, GroupError> {
        Ok(GroupSpec::Free(GroupAlphabet::new(n)?))
    }

    pub fn direct(n: usize, group: FiniteGroup) -> Result<Self, GroupError> {
        Ok(GroupSpec::Direct(ProductSpec::new(GroupAlphabet::new(n)?, group)?))
    }

    pub fn semidirect(n: usize, m: usize) -> Result<Self, GroupError> {
        Ok(GroupSpec::Semidirect(SemidirectSpec::new(n, m)?))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GroupSpec::Free(_) => "free",
            GroupSpec::Finite(_) => "finite",
            GroupSpec::Direct(_) => "direct",
            GroupSpec::Semidirect(_) => "semidirect",
        }
    }

    /// The letters words over this group are written in.
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        match self {
            GroupSpec::Free(ga) => ga.alphabet(),
            GroupSpec::Finite(g) => g.alphabet(),
            GroupSpec::Direct(p) => p.alphabet(),
            GroupSpec::Semidirect(s) => s.alphabet(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| GroupError::InvalidSpec(e.to_string()))?;
        let only = |allowed: &[&str]| -> Result<(), GroupError> {
            let present = [
                ("n", raw.n.is_some()),
                ("m", raw.m.is_some()),
                ("elements", raw.elements.is_some()),
                ("identity", raw.identity.is_some()),
                ("table", raw.table.is_some()),
            ];
            match present.iter().find(|(k, p)| *p && !allowed.contains(k)) {
                Some((k, _)) => Err(GroupError::InvalidSpec(format!("{} spec does not take {k}", raw.kind))),
                None => Ok(()),
            }
        };
        match raw.kind.as_str() {
            "free" => {
                only(&["n"])?;
                GroupSpec::free(raw.n()?)
            }
            "finite" => {
                only(&["m", "elements", "identity", "table"])?;
                Ok(GroupSpec::Finite(raw.finite()?))
            }
            "direct" => GroupSpec::direct(raw.n()?, raw.finite()?),
            "semidirect" => {
                only(&["n", "m"])?;
                let m = raw.m.ok_or_else(|| GroupError::InvalidSpec("semidirect spec needs m".into()))?;
                GroupSpec::semidirect(raw.n()?, m)
            }
            other => Err(GroupError::InvalidSpec(format!("unknown kind {other:?}"))),
        }
    }

    pub fn to_json(&self) -> String {
        let finite = |g: &FiniteGroup| {
            (
                Some(g.alphabet().names().to_vec()),
                Some(g.alphabet().name(g.identity()).to_string()),
                Some(g.table_names()),
            )
        };
        let mut raw = RawSpec { kind: self.kind().into(), n: None, m: None, elements: None, identity: None, table: None };
        match self {
            GroupSpec::Free(ga) => raw.n = Some(ga.rank()),
            GroupSpec::Finite(g) => (raw.elements, raw.identity, raw.table) = finite(g),
            GroupSpec::Direct(p) => {
                raw.n = Some(p.free.rank());
                (raw.elements, raw.identity, raw.table) = finite(&p.group);
            }
            GroupSpec::Semidirect(s) => {
                raw.n = Some(s.product.free.rank());
                raw.m = Some(s.degree());
            }
        }
        serde_json::to_string_pretty(&raw).expect("plain data")
    }
}
