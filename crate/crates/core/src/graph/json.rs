use serde::{Deserialize, Serialize};

use super::{Edge, GraphDocument, LabeledGraph, StateId, StateInfo};
use crate::error::{Error, Result};
use crate::words::Alphabet;

/// Wire form of a graph. Field order is part of the format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JsonGraph {
    pub alphabet: Vec<String>,
    pub states: Vec<JsonState>,
    pub edges: Vec<JsonEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<Vec<JsonFailure>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JsonState {
    pub id: usize,
    pub word: String,
    pub sink: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JsonEdge {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JsonFailure {
    pub state: usize,
    pub to: usize,
}

impl JsonGraph {
    pub fn from_document(doc: &GraphDocument) -> Self {
        let g = &doc.graph;
        let alphabet = g.alphabet();
        JsonGraph {
            alphabet: alphabet.names().to_vec(),
            states: g
                .states()
                .iter()
                .enumerate()
                .map(|(id, s)| JsonState {
                    id,
                    word: s.name.clone(),
                    sink: s.sink,
                })
                .collect(),
            edges: g
                .edges()
                .map(|e| JsonEdge {
                    from: e.from.0,
                    to: e.to.0,
                    label: alphabet.name(e.label).to_string(),
                })
                .collect(),
            // DOT cannot tell an empty failure list from none, so neither do we
            failure: doc.failure.as_ref().filter(|l| !l.is_empty()).map(|links| {
                links
                    .iter()
                    .map(|(s, t)| JsonFailure {
                        state: s.0,
                        to: t.0,
                    })
                    .collect()
            }),
        }
    }

    pub fn into_document(self) -> Result<GraphDocument> {
        let alphabet = Alphabet::new(self.alphabet)?;
        let mut states = Vec::with_capacity(self.states.len());
        for (pos, s) in self.states.into_iter().enumerate() {
            if s.id != pos {
                return Err(Error::Json(format!(
                    "state ids must be 0-based and in order; found {} at position {pos}",
                    s.id
                )));
            }
            states.push(StateInfo {
                word: alphabet.parse_word(&s.word).ok(),
                name: s.word,
                sink: s.sink,
            });
        }
        let n = states.len();
        let edges = self
            .edges
            .into_iter()
            .map(|e| {
                let label = alphabet
                    .symbol(&e.label)
                    .ok_or_else(|| Error::UnknownLabel(e.label.clone()))?;
                Ok(Edge {
                    from: StateId(e.from),
                    to: StateId(e.to),
                    label,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let graph = LabeledGraph::assemble(alphabet, states, edges)?;
        let failure = match self.failure {
            None => None,
            Some(links) => Some(
                links
                    .into_iter()
                    .map(|l| {
                        if l.state >= n || l.to >= n {
                            Err(Error::DanglingEdge {
                                from: l.state,
                                to: l.to,
                            })
                        } else {
                            Ok((StateId(l.state), StateId(l.to)))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok(GraphDocument { graph, failure })
    }
}

pub(super) fn write_json(doc: &GraphDocument) -> String {
    let mut out = serde_json::to_string_pretty(&JsonGraph::from_document(doc))
        .expect("graph json is always serializable");
    out.push('\n');
    out
}

/// Parses the JSON graph schema (with optional `failure` entries). Unknown
/// top-level fields are ignored, so cover reports parse as their cover.
pub fn parse_json(input: &str) -> Result<GraphDocument> {
    let raw: JsonGraph = serde_json::from_str(input)?;
    raw.into_document()
}
