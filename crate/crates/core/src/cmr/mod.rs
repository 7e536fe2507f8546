//! The CMR automaton `D_F` of a forbidden set, its presentation `G_F`, and
//! the failure-function statistics used to reason about them.
//!
//! States are the prefixes of forbidden words, numbered breadth-first by
//! length and then lexicographically, so `ε` is always state 0. Members of
//! the forbidden set are sinks. From every other state there is one edge per
//! symbol: forward to `ua` when that is a state, otherwise backward to the
//! longest suffix of `ua` that is a state.

mod two_word;

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{GraphDocument, LabeledGraph, StateId, StateInfo};
use crate::words::{ForbiddenSet, Symbol, Word};

pub use two_word::{cover_size_bounds, fork_state, z_family_analysis, Z2Analysis};

#[derive(Clone, Debug)]
pub struct CmrAutomaton {
    forbidden: ForbiddenSet,
    words: Vec<Word>,
    sink: Vec<bool>,
    delta: Vec<Option<StateId>>,
    forward: Vec<bool>,
    failure: Vec<Option<StateId>>,
    index: HashMap<Word, StateId>,
    graph: LabeledGraph,
    presentation: LabeledGraph,
    to_presentation: Vec<Option<StateId>>,
    from_presentation: Vec<StateId>,
}

impl CmrAutomaton {
    pub fn new(forbidden: &ForbiddenSet) -> Self {
        let alphabet = forbidden.alphabet().clone();
        let sigma = alphabet.len();

        let prefixes: BTreeSet<(usize, Word)> = forbidden
            .words()
            .iter()
            .flat_map(|w| (0..=w.len()).map(move |l| (l, w.prefix(l))))
            .collect();
        let words: Vec<Word> = prefixes.into_iter().map(|(_, w)| w).collect();
        let n = words.len();
        let index: HashMap<Word, StateId> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), StateId(i)))
            .collect();
        let sink: Vec<bool> = words
            .iter()
            .map(|w| forbidden.words().binary_search(w).is_ok())
            .collect();

        let mut delta = vec![None; n * sigma];
        let mut forward = vec![false; n * sigma];
        let mut failure: Vec<Option<StateId>> = vec![None; n];
        let initial = StateId(0);

        // Lengths are nondecreasing in state order, so f(u) and the
        // transitions out of f(u) are final before u is processed.
        for u in 0..n {
            if sink[u] {
                continue;
            }
            for a in alphabet.symbols() {
                let slot = u * sigma + a.index();
                let extended = words[u].pushed(a);
                if let Some(&ua) = index.get(&extended) {
                    delta[slot] = Some(ua);
                    forward[slot] = true;
                    if !sink[ua.0] {
                        failure[ua.0] = Some(match failure[u] {
                            None => initial,
                            Some(fu) => delta[fu.0 * sigma + a.index()]
                                .expect("failure targets are never sinks"),
                        });
                    }
                } else {
                    delta[slot] = Some(match failure[u] {
                        None => initial,
                        Some(fu) => delta[fu.0 * sigma + a.index()]
                            .expect("failure targets are never sinks"),
                    });
                }
            }
        }

        let states: Vec<StateInfo> = words
            .iter()
            .zip(&sink)
            .map(|(w, &s)| StateInfo {
                sink: s,
                ..StateInfo::for_word(&alphabet, w.clone())
            })
            .collect();
        let graph = LabeledGraph::from_table(alphabet, states, delta.clone());
        let from_presentation: Vec<StateId> = (0..n).filter(|&i| !sink[i]).map(StateId).collect();
        let mut to_presentation = vec![None; n];
        for (i, s) in from_presentation.iter().enumerate() {
            to_presentation[s.0] = Some(StateId(i));
        }
        let presentation = graph.induced(&from_presentation);

        CmrAutomaton {
            forbidden: forbidden.clone(),
            words,
            sink,
            delta,
            forward,
            failure,
            index,
            graph,
            presentation,
            to_presentation,
            from_presentation,
        }
    }

    pub fn forbidden(&self) -> &ForbiddenSet {
        &self.forbidden
    }

    /// `D_F` as a labeled graph, with sinks flagged.
    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    /// `G_F`: `D_F` without its sinks and the edges entering them. State `i`
    /// of `G_F` is `presentation_ids()[i]` of `D_F`.
    pub fn presentation(&self) -> &LabeledGraph {
        &self.presentation
    }

    pub fn presentation_ids(&self) -> &[StateId] {
        &self.from_presentation
    }

    pub fn to_presentation(&self, s: StateId) -> Option<StateId> {
        self.to_presentation[s.0]
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = StateId> + Clone + 'static {
        (0..self.words.len()).map(StateId)
    }

    pub fn initial(&self) -> StateId {
        StateId(0)
    }

    pub fn word(&self, s: StateId) -> &Word {
        &self.words[s.0]
    }

    pub fn state(&self, word: &[Symbol]) -> Option<StateId> {
        self.index.get(word).copied()
    }

    pub fn is_sink(&self, s: StateId) -> bool {
        self.sink[s.0]
    }

    pub fn sinks(&self) -> impl Iterator<Item = StateId> + '_ {
        self.ids().filter(|s| self.sink[s.0])
    }

    pub fn render(&self, s: StateId) -> String {
        self.forbidden.render(&self.words[s.0])
    }

    /// `δ(u, a)`; `None` for sinks.
    pub fn delta(&self, u: StateId, a: Symbol) -> Option<StateId> {
        self.delta[u.0 * self.forbidden.alphabet().len() + a.index()]
    }

    /// Whether the `a`-edge out of `u` is a forward edge.
    pub fn is_forward(&self, u: StateId, a: Symbol) -> bool {
        self.forward[u.0 * self.forbidden.alphabet().len() + a.index()]
    }

    /// The failure function; undefined on `ε` and on sinks.
    pub fn failure(&self, u: StateId) -> Option<StateId> {
        self.failure[u.0]
    }

    /// `Δ(u) = ℓ(u) − ℓ(f(u))`.
    pub fn delta_gap(&self, u: StateId) -> Result<usize> {
        let f = self
            .failure(u)
            .ok_or_else(|| Error::FailureUndefined(self.render(u)))?;
        Ok(self.words[u.0].len() - self.words[f.0].len())
    }

    /// Numbers of forward and backward edges leaving `v` in `D_F`.
    pub fn edge_counts(&self, v: StateId) -> Result<(usize, usize)> {
        if self.sink[v.0] {
            return Err(Error::SinkHasNoEdges(self.render(v)));
        }
        let sigma = self.forbidden.alphabet().len();
        let forward = self
            .forbidden
            .alphabet()
            .symbols()
            .filter(|&a| self.is_forward(v, a))
            .count();
        Ok((forward, sigma - forward))
    }

    /// Failure links as `(state, f(state))` pairs over `D_F` ids.
    pub fn failure_links(&self) -> Vec<(StateId, StateId)> {
        self.ids()
            .filter_map(|s| self.failure(s).map(|t| (s, t)))
            .collect()
    }

    /// `D_F` with its failure links, ready for serialization.
    pub fn automaton_document(&self) -> GraphDocument {
        GraphDocument {
            graph: self.graph.clone(),
            failure: Some(self.failure_links()),
        }
    }

    /// `G_F` with its failure links (the dotted edges), over `G_F` ids.
    pub fn presentation_document(&self) -> GraphDocument {
        let links = self
            .failure_links()
            .into_iter()
            .filter_map(|(s, t)| Some((self.to_presentation(s)?, self.to_presentation(t)?)))
            .collect();
        GraphDocument {
            graph: self.presentation.clone(),
            failure: Some(links),
        }
    }
}

/// Builds `D_F`.
pub fn build_cmr_automaton(forbidden: &ForbiddenSet) -> CmrAutomaton {
    CmrAutomaton::new(forbidden)
}

/// `G_F` of an automaton.
pub fn cmr_presentation(d: &CmrAutomaton) -> LabeledGraph {
    d.presentation().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_irreducible_graph, serialize, Format};
    use crate::oracle::naive_longest_suffix;
    use crate::words::Alphabet;

    fn sample() -> CmrAutomaton {
        CmrAutomaton::new(&ForbiddenSet::from_strs(&["0", "1"], &["00", "1101", "111"]).unwrap())
    }

    fn id(d: &CmrAutomaton, w: &str) -> StateId {
        let word = d.forbidden().alphabet().parse_word(w).unwrap();
        d.state(&word).unwrap_or_else(|| panic!("no state {w}"))
    }

    fn sym(d: &CmrAutomaton, s: &str) -> Symbol {
        d.forbidden().alphabet().symbol(s).unwrap()
    }

    #[test]
    fn three_word_automaton() {
        let d = sample();
        let names: Vec<String> = d.ids().map(|s| d.render(s)).collect();
        assert_eq!(names, ["ε", "0", "1", "00", "11", "110", "111", "1101"]);
        let sinks: Vec<String> = d.sinks().map(|s| d.render(s)).collect();
        assert_eq!(sinks, ["00", "111", "1101"]);
        assert_eq!(d.delta(id(&d, "110"), sym(&d, "0")), Some(id(&d, "00")));
        assert!(!d.is_forward(id(&d, "110"), sym(&d, "0")));
        assert_eq!(d.failure(id(&d, "110")), Some(id(&d, "0")));
        assert_eq!(d.failure(id(&d, "11")), Some(id(&d, "1")));
        assert_eq!(d.failure(id(&d, "0")), Some(d.initial()));
        assert_eq!(d.failure(id(&d, "1")), Some(d.initial()));
        assert_eq!(d.failure(d.initial()), None);
        assert_eq!(d.failure(id(&d, "00")), None);
    }

    #[test]
    fn three_word_presentation() {
        let d = sample();
        let g = cmr_presentation(&d);
        let names: Vec<&str> = g.states().iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["ε", "0", "1", "11", "110"]);
        let s110 = d.to_presentation(id(&d, "110")).unwrap();
        assert_eq!(g.out_degree(s110), 0);
        assert!(!is_irreducible_graph(&g));
    }

    #[test]
    fn golden_mean_automaton() {
        let f = ForbiddenSet::from_strs(&["a", "b"], &["aa"]).unwrap();
        let d = build_cmr_automaton(&f);
        assert_eq!(d.len(), 3);
        let eps = d.initial();
        assert_eq!(d.delta(eps, sym(&d, "b")), Some(eps));
        assert_eq!(d.delta(id(&d, "a"), sym(&d, "b")), Some(eps));
        assert_eq!(d.failure(id(&d, "a")), Some(eps));
        let dot = String::from_utf8(serialize(d.presentation(), Format::Dot)).unwrap();
        assert_eq!(dot.matches(" [label=").count(), 2 + 3);
        assert_eq!(dot.matches("->").count(), 3);
    }

    #[test]
    fn single_symbol_states_fail_to_initial() {
        let f = ForbiddenSet::from_strs(&["a", "b", "c"], &["abc", "cab"]).unwrap();
        let d = CmrAutomaton::new(&f);
        for s in d.ids() {
            if d.word(s).len() == 1 {
                assert_eq!(d.failure(s), Some(d.initial()));
                assert_eq!(d.delta_gap(s), Ok(1));
            }
        }
    }

    #[test]
    fn delta_gaps() {
        let d = sample();
        assert_eq!(d.delta_gap(id(&d, "110")), Ok(2));
        assert_eq!(d.delta_gap(id(&d, "11")), Ok(1));
        assert_eq!(d.delta_gap(id(&d, "0")), Ok(1));
        assert!(matches!(
            d.delta_gap(d.initial()),
            Err(Error::FailureUndefined(_))
        ));
        assert!(matches!(
            d.delta_gap(id(&d, "111")),
            Err(Error::FailureUndefined(_))
        ));
    }

    #[test]
    fn forward_backward_counts() {
        let d = sample();
        assert_eq!(d.edge_counts(id(&d, "11")), Ok((2, 0)));
        assert_eq!(d.edge_counts(id(&d, "0")), Ok((1, 1)));
        assert_eq!(d.edge_counts(d.initial()), Ok((2, 0)));
        assert_eq!(
            d.edge_counts(id(&d, "00")),
            Err(Error::SinkHasNoEdges("00".into()))
        );
    }

    #[test]
    fn single_word_chain() {
        for n in 1..=6 {
            let alphabet = Alphabet::from_chars("ab").unwrap();
            let a = alphabet.symbol("a").unwrap();
            let f = ForbiddenSet::new(alphabet, vec![Word::repeat(a, n)]).unwrap();
            let d = CmrAutomaton::new(&f);
            let g = d.presentation();
            assert_eq!(g.len(), n);
            // a-chain forward, every b goes back to ε
            for i in 0..n {
                let s = StateId(i);
                assert_eq!(g.next(s, Symbol::new(1)), Some(StateId(0)));
                let expect = (i + 1 < n).then_some(StateId(i + 1));
                assert_eq!(g.next(s, a), expect);
            }
            assert!(is_irreducible_graph(g));
        }
    }

    #[test]
    fn two_word_presentation_sizes() {
        let f = ForbiddenSet::from_strs(&["a", "b", "c"], &["abc", "acb"]).unwrap();
        let d = CmrAutomaton::new(&f);
        let names: Vec<&str> = d
            .presentation()
            .states()
            .iter()
            .map(|s| s.name.as_str())
            .collect();
        assert_eq!(names, ["ε", "a", "ab", "ac"]);
    }

    #[test]
    fn backward_targets_match_naive_suffix() {
        let d = sample();
        let states: Vec<Word> = d.ids().map(|s| d.word(s).clone()).collect();
        for u in d.ids().filter(|&u| !d.is_sink(u)) {
            for a in d.forbidden().alphabet().symbols() {
                let target = d.delta(u, a).unwrap();
                let naive = naive_longest_suffix(&d.word(u).pushed(a), &states);
                assert_eq!(d.word(target), &naive);
            }
        }
    }

    #[test]
    fn failure_document_lists_dotted_edges() {
        let d = sample();
        let doc = d.presentation_document();
        assert_eq!(doc.failure.as_ref().unwrap().len(), 4);
        let json = String::from_utf8(doc.render(Format::Json)).unwrap();
        assert!(json.contains("\"failure\""));
    }
}
