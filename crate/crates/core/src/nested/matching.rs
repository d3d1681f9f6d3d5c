use std::collections::BTreeSet;
use std::fmt;

use super::word::{Tag, TaggedSymbol, TaggedWord, Word};
use super::MatchingError;

/// An endpoint of a matching edge. Positions are 1-based; the order is
/// `NegInf < Pos(_) < PosInf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    NegInf,
    Pos(usize),
    PosInf,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::Pos(i) => write!(f, "{i}"),
            Endpoint::PosInf => f.write_str("+inf"),
        }
    }
}

/// A call-return edge `src ⌢ dst`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: Endpoint,
    pub dst: Endpoint,
}

impl Edge {
    pub fn new(src: Endpoint, dst: Endpoint) -> Self {
        Edge { src, dst }
    }

    /// Matched edge between two finite positions.
    pub fn matched(i: usize, j: usize) -> Self {
        Edge::new(Endpoint::Pos(i), Endpoint::Pos(j))
    }

    pub fn pending_call(i: usize) -> Self {
        Edge::new(Endpoint::Pos(i), Endpoint::PosInf)
    }

    pub fn pending_return(j: usize) -> Self {
        Edge::new(Endpoint::NegInf, Endpoint::Pos(j))
    }

    pub fn is_pending(&self) -> bool {
        self.src == Endpoint::NegInf || self.dst == Endpoint::PosInf
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.src, self.dst)
    }
}

/// A set of matching edges over a word of length `len`.
///
/// Construction does not validate; see [`MatchingRelation::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchingRelation {
    len: usize,
    edges: BTreeSet<Edge>,
}

impl MatchingRelation {
    pub fn new(len: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        MatchingRelation {
            len,
            edges: edges.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn contains(&self, edge: &Edge) -> bool {
        self.edges.contains(edge)
    }

    pub fn has_pending(&self) -> bool {
        self.edges.iter().any(Edge::is_pending)
    }

    /// Checks forwardness, uniqueness and nesting.
    ///
    /// `−∞` and `+∞` take part in all three conditions as ordinary endpoints
    /// with `−∞ < k < +∞`. Two pending calls share the endpoint `+∞` and count
    /// as nested (the later call is closed first); two pending returns share
    /// `−∞` and are never compared.
    pub fn validate(&self) -> Result<(), MatchingError> {
        for &edge in &self.edges {
            match (edge.src, edge.dst) {
                (Endpoint::PosInf, _) | (_, Endpoint::NegInf) | (Endpoint::NegInf, Endpoint::PosInf) => {
                    return Err(MatchingError::MalformedEdge(edge));
                }
                _ => {}
            }
            for end in [edge.src, edge.dst] {
                if let Endpoint::Pos(i) = end {
                    if i == 0 || i > self.len {
                        return Err(MatchingError::IndexOutOfRange { edge, len: self.len });
                    }
                }
            }
        }
        for &edge in &self.edges {
            if edge.src >= edge.dst {
                return Err(MatchingError::NotForward(edge));
            }
        }
        let mut as_src = vec![None; self.len + 1];
        let mut as_dst = vec![None; self.len + 1];
        for &edge in &self.edges {
            if let Endpoint::Pos(i) = edge.src {
                if let Some(prev) = as_src[i].replace(edge) {
                    return Err(MatchingError::NotUnique { position: i, first: prev, second: edge });
                }
            }
            if let Endpoint::Pos(j) = edge.dst {
                if let Some(prev) = as_dst[j].replace(edge) {
                    return Err(MatchingError::NotUnique { position: j, first: prev, second: edge });
                }
            }
        }
        // Edges are ordered by source, so every later edge with a strictly
        // larger source is a candidate `(i2, j2)` for the earlier `(i1, j1)`.
        let edges: Vec<Edge> = self.edges.iter().copied().collect();
        for (k, outer) in edges.iter().enumerate() {
            for inner in &edges[k + 1..] {
                if inner.src <= outer.src {
                    continue;
                }
                let nested = inner.dst < outer.dst
                    || (inner.dst == Endpoint::PosInf && outer.dst == Endpoint::PosInf);
                if !nested && outer.dst >= inner.src {
                    return Err(MatchingError::Crossing { first: *outer, second: *inner });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for MatchingRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(Edge::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Validate a matching relation against a word.
pub fn validate_matching(word: &Word, matching: &MatchingRelation) -> Result<(), MatchingError> {
    if word.len() != matching.len() {
        return Err(MatchingError::LengthMismatch {
            word: word.len(),
            matching: matching.len(),
        });
    }
    matching.validate()
}

/// A plain word paired with a valid matching relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedWord {
    word: Word,
    matching: MatchingRelation,
}

impl NestedWord {
    pub fn new(word: Word, matching: MatchingRelation) -> Result<Self, MatchingError> {
        validate_matching(&word, &matching)?;
        Ok(NestedWord { word, matching })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn matching(&self) -> &MatchingRelation {
        &self.matching
    }

    pub fn into_parts(self) -> (Word, MatchingRelation) {
        (self.word, self.matching)
    }

    /// The tagged-alphabet encoding: sources become calls, destinations
    /// returns, every other position internal.
    pub fn encode(&self) -> TaggedWord {
        let mut tags = vec![Tag::Internal; self.word.len()];
        for edge in &self.matching.edges {
            if let Endpoint::Pos(i) = edge.src {
                tags[i - 1] = Tag::Call;
            }
            if let Endpoint::Pos(j) = edge.dst {
                tags[j - 1] = Tag::Return;
            }
        }
        self.word.tagged(&tags)
    }

    /// Inverse of [`encode`](Self::encode): pair calls and returns by stack
    /// discipline. Unclosed calls become `(i, +∞)`, unopened returns `(−∞, j)`.
    pub fn decode(word: &TaggedWord) -> NestedWord {
        NestedWord {
            word: word.forget(),
            matching: matching_of(word.symbols()),
        }
    }
}

/// Stack pairing of the tags in `symbols`.
pub fn matching_of(symbols: &[TaggedSymbol]) -> MatchingRelation {
    let mut open = Vec::new();
    let mut edges = BTreeSet::new();
    for (k, s) in symbols.iter().enumerate() {
        let pos = k + 1;
        match s.tag {
            Tag::Call => open.push(pos),
            Tag::Internal => {}
            Tag::Return => {
                let edge = match open.pop() {
                    Some(i) => Edge::matched(i, pos),
                    None => Edge::pending_return(pos),
                };
                edges.insert(edge);
            }
        }
    }
    edges.extend(open.into_iter().map(Edge::pending_call));
    MatchingRelation {
        len: symbols.len(),
        edges,
    }
}

pub fn encode(nw: &NestedWord) -> TaggedWord {
    nw.encode()
}

pub fn decode(tw: &TaggedWord) -> NestedWord {
    NestedWord::decode(tw)
}
