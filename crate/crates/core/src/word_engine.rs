//! Words in a graph product and the word problem.
//!
//! A word is a sequence of syllables, each an element of one vertex group.
//! Reduction removes identity syllables and merges a syllable into an
//! earlier syllable of the same vertex group whenever every syllable in
//! between commutes with it. Reduced words are unique up to shuffling
//! adjacent commuting syllables; [`Presentation::canonical_form`] picks the
//! representative whose vertex sequence is lexicographically smallest, so
//! element equality is sequence equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;
use thiserror::Error;

use crate::finite_group::FiniteGroup;
use crate::product_graph::SimplicialGraph;

static NEXT_PRESENTATION_ID: AtomicU64 = AtomicU64::new(0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PresentationId(u64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GensetError {
    #[error("generating set contains the identity")]
    ContainsIdentity,
    #[error(
        "generating set is not symmetric: {element} is present but its inverse {inverse} is not"
    )]
    SymmetryViolation { element: String, inverse: String },
    #[error("generating set reaches only {reached} of {order} elements")]
    NotGenerating { reached: usize, order: usize },
    #[error("element index {0} is out of range")]
    BadElementIndex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("vertex {0:?} has no vertex group")]
    MissingVertex(String),
    #[error("vertex group given for unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex {0:?} is assigned twice")]
    DuplicateVertex(String),
    #[error("generating set of vertex {vertex:?}: {source}")]
    Genset { vertex: String, source: GensetError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("element {index} is out of range for the group at vertex {vertex:?}")]
    BadElementIndex { vertex: String, index: usize },
    #[error("word belongs to a different presentation")]
    PresentationMismatch,
    #[error("cannot parse token {0:?}: expected vertex:label")]
    Syntax(String),
    #[error("no element labelled {label:?} at vertex {vertex:?}")]
    UnknownLabel { vertex: String, label: String },
}

/// One entry of a word: an element of the group at `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Syllable {
    pub vertex: usize,
    pub element: usize,
}

impl Syllable {
    pub fn new(vertex: usize, element: usize) -> Self {
        Syllable { vertex, element }
    }
}

/// A raw, possibly unreduced word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub syllables: Vec<Syllable>,
}

impl Word {
    pub fn new(syllables: Vec<Syllable>) -> Self {
        Word { syllables }
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

impl From<Vec<Syllable>> for Word {
    fn from(syllables: Vec<Syllable>) -> Self {
        Word { syllables }
    }
}

/// The canonical representative of an element of a graph product. The
/// empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalWord {
    presentation: PresentationId,
    syllables: Vec<Syllable>,
}

impl CanonicalWord {
    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn presentation_id(&self) -> PresentationId {
        self.presentation
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word::new(self.syllables.clone())
    }
}

/// A vertex group together with its symmetric generating set.
#[derive(Debug, Clone)]
pub struct VertexFactor {
    pub group: FiniteGroup,
    pub genset: Vec<usize>,
}

impl VertexFactor {
    pub fn new(group: FiniteGroup, genset: Vec<usize>) -> Self {
        VertexFactor { group, genset }
    }

    /// All non-identity elements as generators.
    pub fn full(group: FiniteGroup) -> Self {
        let genset = full_genset(&group);
        VertexFactor { group, genset }
    }
}

pub fn full_genset(group: &FiniteGroup) -> Vec<usize> {
    (0..group.order())
        .filter(|&x| x != group.identity())
        .collect()
}

/// Checks that `genset` excludes the identity, is closed under inverses and
/// generates the whole group.
pub fn validate_genset(group: &FiniteGroup, genset: &[usize]) -> Result<(), GensetError> {
    if let Some(&bad) = genset.iter().find(|&&x| x >= group.order()) {
        return Err(GensetError::BadElementIndex(bad));
    }
    if genset.contains(&group.identity()) {
        return Err(GensetError::ContainsIdentity);
    }
    if let Some(&x) = genset.iter().find(|&&x| !genset.contains(&group.inv(x))) {
        return Err(GensetError::SymmetryViolation {
            element: group.label(x).to_string(),
            inverse: group.label(group.inv(x)).to_string(),
        });
    }
    let reached = group.generated_subgroup(genset).len();
    if reached != group.order() {
        return Err(GensetError::NotGenerating {
            reached,
            order: group.order(),
        });
    }
    Ok(())
}

/// A graph product of finite groups with a generating set per vertex.
#[derive(Debug, Clone)]
pub struct Presentation {
    id: PresentationId,
    name: String,
    graph: SimplicialGraph,
    groups: Vec<FiniteGroup>,
    gensets: Vec<Vec<usize>>,
    // word length of each vertex-group element with respect to its genset
    lengths: Vec<Vec<u32>>,
}

impl Presentation {
    /// Builds a presentation from one `(vertex name, factor)` entry per
    /// vertex of `graph`. Generating sets are stored sorted.
    pub fn new<I, S>(
        name: impl Into<String>,
        graph: SimplicialGraph,
        factors: I,
    ) -> Result<Self, PresentationError>
    where
        I: IntoIterator<Item = (S, VertexFactor)>,
        S: Into<String>,
    {
        let n = graph.vertex_count();
        let mut slots: Vec<Option<VertexFactor>> = vec![None; n];
        for (vertex, factor) in factors {
            let vertex = vertex.into();
            let v = graph
                .index_of(&vertex)
                .ok_or_else(|| PresentationError::UnknownVertex(vertex.clone()))?;
            if slots[v].is_some() {
                return Err(PresentationError::DuplicateVertex(vertex));
            }
            slots[v] = Some(factor);
        }
        let mut groups = Vec::with_capacity(n);
        let mut gensets = Vec::with_capacity(n);
        let mut lengths = Vec::with_capacity(n);
        for (v, slot) in slots.into_iter().enumerate() {
            let VertexFactor { group, mut genset } =
                slot.ok_or_else(|| PresentationError::MissingVertex(graph.name(v).to_string()))?;
            genset.sort_unstable();
            genset.dedup();
            validate_genset(&group, &genset).map_err(|source| PresentationError::Genset {
                vertex: graph.name(v).to_string(),
                source,
            })?;
            lengths.push(
                group
                    .cayley_distances(&genset)
                    .into_iter()
                    .map(|d| d.expect("generating set reaches every element"))
                    .collect(),
            );
            groups.push(group);
            gensets.push(genset);
        }
        Ok(Presentation {
            id: PresentationId(NEXT_PRESENTATION_ID.fetch_add(1, Ordering::Relaxed)),
            name: name.into(),
            graph,
            groups,
            gensets,
            lengths,
        })
    }

    /// Every vertex gets all of its non-identity elements as generators.
    pub fn with_full_gensets<I, S>(
        name: impl Into<String>,
        graph: SimplicialGraph,
        groups: I,
    ) -> Result<Self, PresentationError>
    where
        I: IntoIterator<Item = (S, FiniteGroup)>,
        S: Into<String>,
    {
        Self::new(
            name,
            graph,
            groups.into_iter().map(|(v, g)| (v, VertexFactor::full(g))),
        )
    }

    pub fn id(&self) -> PresentationId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.groups.len()
    }

    pub fn group(&self, v: usize) -> &FiniteGroup {
        &self.groups[v]
    }

    pub fn genset(&self, v: usize) -> &[usize] {
        &self.gensets[v]
    }

    /// Word length of `element` in Cay(G_v, S_v).
    pub fn element_length(&self, v: usize, element: usize) -> u32 {
        self.lengths[v][element]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, WordError> {
        self.graph
            .index_of(name)
            .ok_or_else(|| WordError::UnknownVertex(name.to_string()))
    }

    /// Syllable from a vertex name and element label.
    pub fn syllable(&self, vertex: &str, label: &str) -> Result<Syllable, WordError> {
        let v = self.vertex_index(vertex)?;
        let element =
            self.groups[v]
                .index_of_label(label)
                .ok_or_else(|| WordError::UnknownLabel {
                    vertex: vertex.to_string(),
                    label: label.to_string(),
                })?;
        Ok(Syllable { vertex: v, element })
    }

    pub fn identity(&self) -> CanonicalWord {
        CanonicalWord {
            presentation: self.id,
            syllables: Vec::new(),
        }
    }

    fn check(&self, syllables: &[Syllable]) -> Result<(), WordError> {
        for s in syllables {
            if s.vertex >= self.groups.len() {
                return Err(WordError::UnknownVertex(format!("#{}", s.vertex)));
            }
            if s.element >= self.groups[s.vertex].order() {
                return Err(WordError::BadElementIndex {
                    vertex: self.graph.name(s.vertex).to_string(),
                    index: s.element,
                });
            }
        }
        Ok(())
    }

    /// Reduces a word: identity syllables are dropped and each syllable is
    /// merged into the nearest earlier syllable of its vertex group if all
    /// syllables in between commute with it.
    pub fn reduce(&self, w: &Word) -> Result<Word, WordError> {
        self.check(&w.syllables)?;
        let mut out = Vec::with_capacity(w.len());
        for &s in &w.syllables {
            self.push_reduced(&mut out, s);
        }
        Ok(Word::new(out))
    }

    /// Appends `s` to an already reduced word, keeping it reduced. Removing a
    /// syllable from a reduced word cannot unblock another merge, so one pass
    /// reaches the fixpoint.
    fn push_reduced(&self, out: &mut Vec<Syllable>, s: Syllable) {
        let group = &self.groups[s.vertex];
        if s.element == group.identity() {
            return;
        }
        for j in (0..out.len()).rev() {
            let t = out[j];
            if t.vertex == s.vertex {
                let merged = group.mul(t.element, s.element);
                if merged == group.identity() {
                    out.remove(j);
                } else {
                    out[j].element = merged;
                }
                return;
            }
            if !self.graph.adjacent(t.vertex, s.vertex) {
                break;
            }
        }
        out.push(s);
    }

    /// Reorders a reduced word: repeatedly emit, among the syllables that
    /// commute with everything before them, the one at the smallest vertex.
    fn order_canonical(&self, mut rest: Vec<Syllable>) -> Vec<Syllable> {
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..rest.len() {
                let v = rest[i].vertex;
                if best.is_some_and(|b| rest[b].vertex <= v) {
                    continue;
                }
                if rest[..i].iter().all(|t| self.graph.adjacent(t.vertex, v)) {
                    best = Some(i);
                }
            }
            out.push(rest.remove(best.expect("the first syllable is always movable")));
        }
        out
    }

    pub fn canonical_form(&self, w: &Word) -> Result<CanonicalWord, WordError> {
        let reduced = self.reduce(w)?;
        Ok(CanonicalWord {
            presentation: self.id,
            syllables: self.order_canonical(reduced.syllables),
        })
    }

    pub fn canonical_from(&self, syllables: Vec<Syllable>) -> Result<CanonicalWord, WordError> {
        self.canonical_form(&Word::new(syllables))
    }

    fn owns(&self, w: &CanonicalWord) -> Result<(), WordError> {
        if w.presentation == self.id {
            Ok(())
        } else {
            Err(WordError::PresentationMismatch)
        }
    }

    pub fn multiply(
        &self,
        a: &CanonicalWord,
        b: &CanonicalWord,
    ) -> Result<CanonicalWord, WordError> {
        self.owns(a)?;
        self.owns(b)?;
        let mut out = a.syllables.clone();
        for &s in &b.syllables {
            self.push_reduced(&mut out, s);
        }
        Ok(CanonicalWord {
            presentation: self.id,
            syllables: self.order_canonical(out),
        })
    }

    /// Right multiplication by a single syllable.
    pub fn multiply_syllable(
        &self,
        a: &CanonicalWord,
        s: Syllable,
    ) -> Result<CanonicalWord, WordError> {
        self.owns(a)?;
        self.check(&[s])?;
        let mut out = a.syllables.clone();
        self.push_reduced(&mut out, s);
        Ok(CanonicalWord {
            presentation: self.id,
            syllables: self.order_canonical(out),
        })
    }

    /// # Panics
    /// If `w` belongs to another presentation.
    pub fn invert(&self, w: &CanonicalWord) -> CanonicalWord {
        assert_eq!(
            w.presentation, self.id,
            "word belongs to a different presentation"
        );
        let reversed = w
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable {
                vertex: s.vertex,
                element: self.groups[s.vertex].inv(s.element),
            })
            .collect();
        // reversing a reduced word keeps it reduced
        CanonicalWord {
            presentation: self.id,
            syllables: self.order_canonical(reversed),
        }
    }

    /// Sum over syllables of their word length inside the vertex group.
    pub fn s_length(&self, w: &CanonicalWord) -> u32 {
        w.syllables
            .iter()
            .map(|s| self.lengths[s.vertex][s.element])
            .sum()
    }

    /// Parses `vertex:label` tokens separated by `;`. A label that matches no
    /// element but parses as a number is taken as an element index. The
    /// empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::default());
        }
        let mut syllables = Vec::new();
        for token in text.split(';') {
            let token = token.trim();
            let (vertex, label) = token
                .split_once(':')
                .ok_or_else(|| WordError::Syntax(token.to_string()))?;
            let (vertex, label) = (vertex.trim(), label.trim());
            let v = self.vertex_index(vertex)?;
            let group = &self.groups[v];
            let element = match group.index_of_label(label) {
                Some(x) => x,
                None => match label.parse::<usize>() {
                    Ok(x) if x < group.order() => x,
                    _ => {
                        return Err(WordError::UnknownLabel {
                            vertex: vertex.to_string(),
                            label: label.to_string(),
                        })
                    }
                },
            };
            syllables.push(Syllable { vertex: v, element });
        }
        Ok(Word::new(syllables))
    }

    pub fn format_syllables(&self, syllables: &[Syllable]) -> String {
        syllables
            .iter()
            .map(|s| {
                format!(
                    "{}:{}",
                    self.graph.name(s.vertex),
                    self.groups[s.vertex].label(s.element)
                )
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn format_word(&self, w: &CanonicalWord) -> String {
        self.format_syllables(&w.syllables)
    }

    /// Lookup table from vertex name to index, for callers holding names.
    pub fn vertex_indices(&self) -> HashMap<&str, usize> {
        self.graph
            .names()
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (", self.name)?;
        for (v, g) in self.groups.iter().enumerate() {
            if v > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: order {}", self.graph.name(v), g.order())?;
        }
        write!(f, "; {} edges)", self.graph.edge_count())
    }
}
