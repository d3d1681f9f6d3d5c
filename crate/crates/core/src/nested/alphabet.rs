use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::WordError;

/// Index of a base letter inside an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub usize);

impl Letter {
    pub fn index(self) -> usize {
        self.0
    }
}

/// An ordered finite set of distinct symbol names.
///
/// Names must be non-empty and free of whitespace, must not start with `<`
/// or end with `>` (those mark call and return tags in the token syntax),
/// and may not be the literal `ε`.
#[derive(Clone)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(WordError::InvalidSymbolName(name.clone()));
            }
            if index.insert(name.clone(), Letter(i)).is_some() {
                return Err(WordError::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Alphabet { names, index })
    }

    /// Convenience constructor returning the shared handle words carry.
    pub fn shared<I, S>(names: I) -> Result<Arc<Self>, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(names).map(Arc::new)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(Letter)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.0 < self.names.len()
    }

    /// Letters of `self` followed by those of `other`; fails if a name is shared.
    pub fn disjoint_union(&self, other: &Alphabet) -> Result<Alphabet, WordError> {
        if let Some(shared) = self.names.iter().find(|n| other.index.contains_key(*n)) {
            return Err(WordError::DuplicateSymbol(shared.clone()));
        }
        Alphabet::new(self.names.iter().chain(other.names.iter()).cloned())
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "ε"
        && !name.starts_with('<')
        && !name.ends_with('>')
        && !name.chars().any(char::is_whitespace)
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// True when both handles describe the same alphabet.
pub(crate) fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
