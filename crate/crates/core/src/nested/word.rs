use std::fmt;
use std::sync::Arc;

use super::alphabet::{same_alphabet, Alphabet, Letter};
use super::WordError;

/// How a position of a nested word participates in the matching relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Call,
    Internal,
    Return,
}

impl Tag {
    pub const ALL: [Tag; 3] = [Tag::Call, Tag::Internal, Tag::Return];

    /// The tag a position carries after reversing a word.
    pub fn reversed(self) -> Tag {
        match self {
            Tag::Call => Tag::Return,
            Tag::Return => Tag::Call,
            Tag::Internal => Tag::Internal,
        }
    }
}

/// A letter of the tagged alphabet: a base letter together with its tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggedSymbol {
    pub letter: Letter,
    pub tag: Tag,
}

impl TaggedSymbol {
    pub fn new(letter: Letter, tag: Tag) -> Self {
        TaggedSymbol { letter, tag }
    }

    pub fn call(letter: Letter) -> Self {
        Self::new(letter, Tag::Call)
    }

    pub fn internal(letter: Letter) -> Self {
        Self::new(letter, Tag::Internal)
    }

    pub fn ret(letter: Letter) -> Self {
        Self::new(letter, Tag::Return)
    }

    pub fn reversed(self) -> Self {
        Self::new(self.letter, self.tag.reversed())
    }

    /// Token form: `<a`, `a`, or `a>`.
    pub fn token(self, alphabet: &Alphabet) -> String {
        let name = alphabet.name(self.letter);
        match self.tag {
            Tag::Call => format!("<{name}"),
            Tag::Internal => name.to_string(),
            Tag::Return => format!("{name}>"),
        }
    }
}

/// Parse one token of the tagged-word syntax.
pub fn parse_token(alphabet: &Alphabet, token: &str) -> Result<TaggedSymbol, WordError> {
    let (name, tag) = if let Some(rest) = token.strip_prefix('<') {
        (rest, Tag::Call)
    } else if let Some(rest) = token.strip_suffix('>') {
        (rest, Tag::Return)
    } else {
        (token, Tag::Internal)
    };
    let letter = alphabet
        .letter(name)
        .ok_or_else(|| WordError::UnknownSymbol(token.to_string()))?;
    Ok(TaggedSymbol::new(letter, tag))
}

fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.split_whitespace().filter(|t| *t != "ε")
}

/// A word over the tagged alphabet. The empty sequence is ε.
#[derive(Clone, PartialEq, Eq)]
pub struct TaggedWord {
    alphabet: Arc<Alphabet>,
    symbols: Vec<TaggedSymbol>,
}

impl TaggedWord {
    pub fn new(alphabet: Arc<Alphabet>, symbols: Vec<TaggedSymbol>) -> Result<Self, WordError> {
        if let Some(bad) = symbols.iter().find(|s| !alphabet.contains(s.letter)) {
            return Err(WordError::LetterOutOfRange(bad.letter.0));
        }
        Ok(TaggedWord { alphabet, symbols })
    }

    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        TaggedWord {
            alphabet,
            symbols: Vec::new(),
        }
    }

    /// Parse whitespace-separated tokens (`<a`, `a`, `a>`); `ε` or blank input is the empty word.
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Self, WordError> {
        let symbols = tokens(text)
            .map(|t| parse_token(alphabet, t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TaggedWord {
            alphabet: alphabet.clone(),
            symbols,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[TaggedSymbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<TaggedSymbol> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The forgetful map: strip all tags.
    pub fn forget(&self) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            letters: self.symbols.iter().map(|s| s.letter).collect(),
        }
    }

    /// Reverse the order and swap calls with returns.
    pub fn reverse(&self) -> TaggedWord {
        TaggedWord {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols.iter().rev().map(|s| s.reversed()).collect(),
        }
    }

    /// The first `min(len, |self|)` symbols.
    pub fn prefix(&self, len: usize) -> TaggedWord {
        TaggedWord {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols[..len.min(self.symbols.len())].to_vec(),
        }
    }

    pub fn concat(&self, other: &TaggedWord) -> Result<TaggedWord, WordError> {
        if !same_alphabet(&self.alphabet, &other.alphabet) {
            return Err(WordError::AlphabetMismatch);
        }
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Ok(TaggedWord {
            alphabet: self.alphabet.clone(),
            symbols,
        })
    }

    pub fn tokens(&self) -> Vec<String> {
        self.symbols.iter().map(|s| s.token(&self.alphabet)).collect()
    }
}

impl fmt::Display for TaggedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return f.write_str("ε");
        }
        f.write_str(&self.tokens().join(" "))
    }
}

impl fmt::Debug for TaggedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TaggedWord({self})")
    }
}

/// A plain (untagged) word over an alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(alphabet: Arc<Alphabet>, letters: Vec<Letter>) -> Result<Self, WordError> {
        if let Some(bad) = letters.iter().find(|l| !alphabet.contains(**l)) {
            return Err(WordError::LetterOutOfRange(bad.0));
        }
        Ok(Word { alphabet, letters })
    }

    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        Word {
            alphabet,
            letters: Vec::new(),
        }
    }

    /// Parse whitespace-separated letter names. Tagged tokens are rejected.
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Self, WordError> {
        let letters = tokens(text)
            .map(|t| {
                alphabet.letter(t).ok_or_else(|| {
                    if t.starts_with('<') || t.ends_with('>') {
                        WordError::UnexpectedTag(t.to_string())
                    } else {
                        WordError::UnknownSymbol(t.to_string())
                    }
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn reverse(&self) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Tag every position with `tags[i]`.
    pub fn tagged(&self, tags: &[Tag]) -> TaggedWord {
        assert_eq!(tags.len(), self.letters.len(), "one tag per position");
        TaggedWord {
            alphabet: self.alphabet.clone(),
            symbols: self
                .letters
                .iter()
                .zip(tags)
                .map(|(&l, &t)| TaggedSymbol::new(l, t))
                .collect(),
        }
    }

    /// Every position tagged internal.
    pub fn as_internal(&self) -> TaggedWord {
        self.tagged(&vec![Tag::Internal; self.letters.len()])
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        let names: Vec<&str> = self.letters.iter().map(|&l| self.alphabet.name(l)).collect();
        f.write_str(&names.join(" "))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// All tagged symbols of an alphabet, sorted by their token text.
pub fn tagged_symbols_by_token(alphabet: &Alphabet) -> Vec<TaggedSymbol> {
    let mut symbols: Vec<TaggedSymbol> = alphabet
        .letters()
        .flat_map(|l| Tag::ALL.into_iter().map(move |t| TaggedSymbol::new(l, t)))
        .collect();
    symbols.sort_by_cached_key(|s| s.token(alphabet));
    symbols
}

/// Odometer over all sequences of length `len` drawn from `digits`, in
/// lexicographic order of the digit list.
pub(crate) struct Odometer<T: Copy> {
    digits: Vec<T>,
    counters: Vec<usize>,
    done: bool,
}

impl<T: Copy> Odometer<T> {
    pub(crate) fn new(digits: Vec<T>, len: usize) -> Self {
        let done = digits.is_empty() && len > 0;
        Odometer {
            digits,
            counters: vec![0; len],
            done,
        }
    }
}

impl<T: Copy> Iterator for Odometer<T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        if self.done {
            return None;
        }
        let item = self.counters.iter().map(|&c| self.digits[c]).collect();
        self.done = true;
        for c in self.counters.iter_mut().rev() {
            *c += 1;
            if *c < self.digits.len() {
                self.done = false;
                break;
            }
            *c = 0;
        }
        Some(item)
    }
}

/// Every tagged word of exactly `len` symbols, in token-lexicographic order.
pub fn tagged_words(alphabet: &Arc<Alphabet>, len: usize) -> impl Iterator<Item = TaggedWord> {
    let alphabet = alphabet.clone();
    Odometer::new(tagged_symbols_by_token(&alphabet), len).map(move |symbols| TaggedWord {
        alphabet: alphabet.clone(),
        symbols,
    })
}

/// Every plain word of exactly `len` letters, in alphabet order.
pub fn plain_words(alphabet: &Arc<Alphabet>, len: usize) -> impl Iterator<Item = Word> {
    let alphabet = alphabet.clone();
    Odometer::new(alphabet.letters().collect(), len).map(move |letters| Word {
        alphabet: alphabet.clone(),
        letters,
    })
}
