use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::{follower_partition, is_follower_separated};
use crate::bits::BitSet;
use crate::cmr::CmrAutomaton;
use crate::conformance;
use crate::error::{Error, Result};
use crate::graph::{
    is_irreducible_graph, quotient, strongly_connected_components, GraphDocument, JsonGraph,
    LabeledGraph, Partition, StateId,
};
use crate::words::ForbiddenSet;

/// The minimal deterministic automaton of `S_F` read from `ε`: `G_F`
/// quotiented by follower-set equivalence.
#[derive(Clone, Debug)]
pub struct NerodeDfa {
    graph: LabeledGraph,
    start: StateId,
    partition: Partition,
}

impl NerodeDfa {
    pub fn new(d: &CmrAutomaton) -> Self {
        let g = d.presentation();
        let partition = follower_partition(g);
        let graph = quotient(g, &partition).expect("follower partitions are merge-consistent");
        let start = StateId(partition.block_of(StateId(0)));
        NerodeDfa {
            graph,
            start,
            partition,
        }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    /// The follower partition of `G_F` this quotient came from.
    pub fn partition(&self) -> &Partition {
        &self.partition
    }
}

/// No word generated by `sub` (from any state) contains a forbidden word.
fn generates_only_admissible(sub: &LabeledGraph, d: &CmrAutomaton) -> bool {
    let sigma = d.forbidden().alphabet().len();
    let mut seen = vec![false; sub.len() * d.len()];
    let mut stack: Vec<(StateId, StateId)> = Vec::new();
    for s in sub.ids() {
        seen[s.0 * d.len()] = true;
        stack.push((s, d.initial()));
    }
    while let Some((s, q)) = stack.pop() {
        for (a, t) in sub.out_edges(s) {
            debug_assert!(a.index() < sigma);
            let r = d.delta(q, a).expect("only non-sinks are pushed");
            if d.is_sink(r) {
                return false;
            }
            let key = t.0 * d.len() + r.0;
            if !seen[key] {
                seen[key] = true;
                stack.push((t, r));
            }
        }
    }
    true
}

/// Every word of `S_F` is generated by `sub` from some state.
fn generates_every_admissible(sub: &LabeledGraph, nerode: &NerodeDfa) -> bool {
    let q = nerode.graph();
    let start = (nerode.start(), BitSet::full(sub.len()));
    if sub.is_empty() {
        return q.out_degree(nerode.start()) == 0;
    }
    let mut seen: HashSet<(StateId, BitSet)> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some((state, set)) = queue.pop_front() {
        for (a, next_state) in q.out_edges(state) {
            let mut image = BitSet::new(sub.len());
            for s in set.iter() {
                if let Some(t) = sub.next(StateId(s), a) {
                    image.insert(t.0);
                }
            }
            if image.is_empty() {
                return false;
            }
            let node = (next_state, image);
            if !seen.contains(&node) {
                seen.insert(node.clone());
                queue.push_back(node);
            }
        }
    }
    true
}

fn presents_with(sub: &LabeledGraph, d: &CmrAutomaton, nerode: &NerodeDfa) -> bool {
    sub.alphabet() == d.forbidden().alphabet()
        && generates_only_admissible(sub, d)
        && generates_every_admissible(sub, nerode)
}

/// Whether the words generated by `sub` are exactly `S_F`.
pub fn presents_language(sub: &LabeledGraph, f: &ForbiddenSet) -> bool {
    let d = CmrAutomaton::new(f);
    let nerode = NerodeDfa::new(&d);
    presents_with(sub, &d, &nerode)
}

/// Outcome of minimizing one presentation of `S_F`.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Follower partition of the input presentation.
    pub partition: Partition,
    /// The input presentation merged by `partition`.
    pub quotient: LabeledGraph,
    pub cover: LabeledGraph,
    /// Quotient states kept in the cover, when it is a proper component.
    pub component: Option<Vec<StateId>>,
    /// Some strongly connected piece of the quotient presents `S_F`.
    pub irreducible: bool,
}

/// Merges follower-equivalent states of `g` (a presentation of `S_F`); if the
/// result is not strongly connected, searches its components, largest first,
/// for one that still presents `S_F` on its own.
pub fn reduce_presentation(g: &LabeledGraph, d: &CmrAutomaton, nerode: &NerodeDfa) -> Reduction {
    let partition = follower_partition(g);
    let q = quotient(g, &partition).expect("follower partitions are merge-consistent");
    if is_irreducible_graph(&q) {
        return Reduction {
            partition,
            cover: q.clone(),
            quotient: q,
            component: None,
            irreducible: true,
        };
    }
    let mut components = strongly_connected_components(&q);
    components.sort_by(|x, y| y.len().cmp(&x.len()).then(x[0].cmp(&y[0])));
    for comp in components {
        // a lone state without a self-loop only generates ε
        if comp.len() == 1 && !q.out_edges(comp[0]).any(|(_, t)| t == comp[0]) {
            continue;
        }
        let sub = q.induced(&comp);
        if presents_with(&sub, d, nerode) {
            let inner = follower_partition(&sub);
            let cover = quotient(&sub, &inner).expect("follower partitions are merge-consistent");
            return Reduction {
                partition,
                quotient: q,
                cover,
                component: Some(comp),
                irreducible: true,
            };
        }
    }
    Reduction {
        partition,
        cover: q.clone(),
        quotient: q,
        component: None,
        irreducible: false,
    }
}

/// Whether `S_F` is irreducible, decided by searching the strongly connected
/// components of its minimal automaton for a presentation of `S_F`.
pub fn is_language_irreducible(f: &ForbiddenSet) -> Result<bool> {
    if f.is_degenerate() {
        return Err(Error::DegenerateLanguage);
    }
    let d = CmrAutomaton::new(f);
    let nerode = NerodeDfa::new(&d);
    Ok(reduce_presentation(d.presentation(), &d, &nerode).irreducible)
}

/// Shannon cover of `S_F` together with the verdicts gathered on the way.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub cover: LabeledGraph,
    /// Number of states of `cover`.
    pub nu: usize,
    /// `G_F` is strongly connected.
    pub graph_irreducible: bool,
    /// `S_F` is irreducible.
    pub language_irreducible: bool,
    /// `cover` is known to be the unique minimal presentation.
    pub cover_guaranteed_minimal: bool,
    /// Follower partition of `G_F`.
    pub partition: Partition,
    /// States of the follower quotient of `G_F`.
    pub quotient_size: usize,
    pub conformance: Vec<(String, bool)>,
}

#[derive(Serialize)]
struct JsonCoverReport {
    #[serde(flatten)]
    cover: JsonGraph,
    nu: usize,
    graph_irreducible: bool,
    language_irreducible: bool,
    cover_guaranteed_minimal: bool,
    partition: Vec<Vec<usize>>,
    conformance: Vec<JsonCheck>,
}

#[derive(Serialize)]
struct JsonCheck {
    name: String,
    holds: bool,
}

impl CoverReport {
    pub fn to_json(&self) -> String {
        let report = JsonCoverReport {
            cover: JsonGraph::from_document(&GraphDocument::plain(self.cover.clone())),
            nu: self.nu,
            graph_irreducible: self.graph_irreducible,
            language_irreducible: self.language_irreducible,
            cover_guaranteed_minimal: self.cover_guaranteed_minimal,
            partition: self
                .partition
                .blocks()
                .iter()
                .map(|b| b.iter().map(|s| s.0).collect())
                .collect(),
            conformance: self
                .conformance
                .iter()
                .map(|(name, holds)| JsonCheck {
                    name: name.clone(),
                    holds: *holds,
                })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&report).expect("report is serializable");
        out.push('\n');
        out
    }
}

/// Runs the full pipeline: build `G_F`, merge follower-equivalent states, and
/// fall back to a strongly connected component when the quotient has
/// transient parts.
pub fn shannon_cover(f: &ForbiddenSet) -> Result<CoverReport> {
    if f.is_degenerate() {
        return Err(Error::DegenerateLanguage);
    }
    let d = CmrAutomaton::new(f);
    let nerode = NerodeDfa::new(&d);
    let reduction = reduce_presentation(d.presentation(), &d, &nerode);
    let mut report = CoverReport {
        nu: reduction.cover.len(),
        graph_irreducible: is_irreducible_graph(d.presentation()),
        language_irreducible: reduction.irreducible,
        cover_guaranteed_minimal: reduction.irreducible,
        partition: reduction.partition,
        quotient_size: reduction.quotient.len(),
        cover: reduction.cover,
        conformance: Vec::new(),
    };
    debug_assert!(!report.language_irreducible || is_follower_separated(&report.cover));
    report.conformance = conformance::cover_checks(&d, &report)
        .into_iter()
        .filter_map(|c| c.holds().map(|h| (c.name.to_string(), h)))
        .collect();
    Ok(report)
}
