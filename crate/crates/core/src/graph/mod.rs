//! Deterministic labeled digraphs: the common substrate for CMR
//! presentations, quotients, covers and the oracle presentations.

mod dot;
mod json;
mod partition;
mod scc;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Symbol, Word};

pub use dot::parse_dot;
pub use json::{parse_json, JsonGraph};
pub use partition::{quotient, Partition};
pub use scc::{is_irreducible_graph, strongly_connected_components};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Per-state metadata: a display name, the word it stands for when known,
/// and whether it is a sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateInfo {
    pub name: String,
    pub word: Option<Word>,
    pub sink: bool,
}

impl StateInfo {
    pub fn named(name: impl Into<String>) -> Self {
        StateInfo {
            name: name.into(),
            word: None,
            sink: false,
        }
    }

    pub fn for_word(alphabet: &Alphabet, word: Word) -> Self {
        StateInfo {
            name: alphabet.render(&word),
            word: Some(word),
            sink: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: StateId,
    pub to: StateId,
    pub label: Symbol,
}

/// A deterministic labeled graph, stored as a partial transition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    states: Vec<StateInfo>,
    next: Vec<Option<StateId>>,
}

impl LabeledGraph {
    /// Builds a graph, rejecting nondeterminism, dangling endpoints and
    /// labels outside the alphabet.
    pub fn assemble(
        alphabet: Alphabet,
        states: Vec<StateInfo>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let sigma = alphabet.len();
        let mut next = vec![None; states.len() * sigma];
        for e in edges {
            if e.from.0 >= states.len() || e.to.0 >= states.len() {
                return Err(Error::DanglingEdge {
                    from: e.from.0,
                    to: e.to.0,
                });
            }
            if !alphabet.contains(e.label) {
                return Err(Error::UnknownLabel(format!("#{}", e.label.index())));
            }
            let slot = &mut next[e.from.0 * sigma + e.label.index()];
            if slot.is_some() {
                return Err(Error::NondeterministicState {
                    state: e.from.0,
                    label: alphabet.name(e.label).to_string(),
                });
            }
            *slot = Some(e.to);
        }
        Ok(LabeledGraph {
            alphabet,
            states,
            next,
        })
    }

    pub(crate) fn from_table(
        alphabet: Alphabet,
        states: Vec<StateInfo>,
        next: Vec<Option<StateId>>,
    ) -> Self {
        debug_assert_eq!(next.len(), states.len() * alphabet.len());
        LabeledGraph {
            alphabet,
            states,
            next,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = StateId> + Clone + 'static {
        (0..self.states.len()).map(StateId)
    }

    pub fn states(&self) -> &[StateInfo] {
        &self.states
    }

    pub fn state(&self, id: StateId) -> &StateInfo {
        &self.states[id.0]
    }

    pub fn name(&self, id: StateId) -> &str {
        &self.states[id.0].name
    }

    /// Looks a state up by the word it represents.
    pub fn find_word(&self, word: &[Symbol]) -> Option<StateId> {
        self.states
            .iter()
            .position(|s| s.word.as_deref() == Some(word))
            .map(StateId)
    }

    pub fn next(&self, from: StateId, label: Symbol) -> Option<StateId> {
        self.next[from.0 * self.alphabet.len() + label.index()]
    }

    /// Outgoing `(label, target)` pairs in alphabet order.
    pub fn out_edges(&self, from: StateId) -> impl Iterator<Item = (Symbol, StateId)> + '_ {
        let sigma = self.alphabet.len();
        self.next[from.0 * sigma..(from.0 + 1) * sigma]
            .iter()
            .enumerate()
            .filter_map(|(a, t)| t.map(|t| (Symbol::new(a), t)))
    }

    pub fn out_degree(&self, from: StateId) -> usize {
        self.out_edges(from).count()
    }

    /// All edges sorted by `(source, label)`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.ids().flat_map(move |from| {
            self.out_edges(from)
                .map(move |(label, to)| Edge { from, to, label })
        })
    }

    pub fn edge_count(&self) -> usize {
        self.next.iter().filter(|t| t.is_some()).count()
    }

    /// Follows `word` from `from`, if every step is defined.
    pub fn run(&self, from: StateId, word: &[Symbol]) -> Option<StateId> {
        word.iter().try_fold(from, |s, &a| self.next(s, a))
    }

    /// Subgraph induced by `keep`, with states renumbered in the order given.
    pub fn induced(&self, keep: &[StateId]) -> LabeledGraph {
        let mut map = vec![None; self.len()];
        for (i, s) in keep.iter().enumerate() {
            map[s.0] = Some(StateId(i));
        }
        let states = keep.iter().map(|s| self.states[s.0].clone()).collect();
        let mut next = Vec::with_capacity(keep.len() * self.alphabet.len());
        for s in keep {
            for a in self.alphabet.symbols() {
                next.push(self.next(*s, a).and_then(|t| map[t.0]));
            }
        }
        LabeledGraph::from_table(self.alphabet.clone(), states, next)
    }
}

/// States reachable from `start` along paths of length >= 0.
pub fn reachable_from(g: &LabeledGraph, start: &[StateId]) -> BTreeSet<StateId> {
    let mut seen = vec![false; g.len()];
    let mut stack: Vec<StateId> = Vec::new();
    for &s in start {
        if !seen[s.0] {
            seen[s.0] = true;
            stack.push(s);
        }
    }
    while let Some(s) = stack.pop() {
        for (_, t) in g.out_edges(s) {
            if !seen[t.0] {
                seen[t.0] = true;
                stack.push(t);
            }
        }
    }
    g.ids().filter(|s| seen[s.0]).collect()
}

/// Output formats for [`serialize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

/// A graph together with optional failure-function links, the unit that is
/// read and written by the JSON and DOT codecs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: LabeledGraph,
    pub failure: Option<Vec<(StateId, StateId)>>,
}

impl GraphDocument {
    pub fn plain(graph: LabeledGraph) -> Self {
        GraphDocument {
            graph,
            failure: None,
        }
    }

    pub fn render(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Dot => dot::write_dot(self).into_bytes(),
            Format::Json => json::write_json(self).into_bytes(),
        }
    }

    /// Parses either codec, choosing JSON when the first non-blank
    /// character is `{`.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            parse_json(input)
        } else {
            parse_dot(input)
        }
    }
}

/// Deterministic serialization: states in declared order, edges sorted by
/// `(source, label)`.
pub fn serialize(g: &LabeledGraph, format: Format) -> Vec<u8> {
    GraphDocument::plain(g.clone()).render(format)
}
