//! Follower-set minimization: partition refinement, the Shannon cover
//! pipeline, and isomorphism of follower-separated presentations.

mod cover;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Partition, StateId, StateInfo};

pub use cover::{
    is_language_irreducible, presents_language, reduce_presentation, shannon_cover, CoverReport,
    NerodeDfa, Reduction,
};

/// Coarsest partition of `g` into follower-set-equivalent states.
///
/// Starts from blocks of equal outgoing label sets (so edgeless states, whose
/// follower set is `{ε}`, share a block) and splits until every block sends
/// each label into a single block.
pub fn follower_partition(g: &LabeledGraph) -> Partition {
    let sigma = g.alphabet().len();
    let labels: Vec<Vec<bool>> = g
        .ids()
        .map(|s| {
            g.alphabet()
                .symbols()
                .map(|a| g.next(s, a).is_some())
                .collect()
        })
        .collect();
    let mut partition = Partition::from_keys(&labels);
    loop {
        let keys: Vec<Vec<usize>> = g
            .ids()
            .map(|s| {
                let mut key = Vec::with_capacity(sigma + 1);
                key.push(partition.block_of(s));
                key.extend(
                    g.alphabet()
                        .symbols()
                        .map(|a| g.next(s, a).map_or(usize::MAX, |t| partition.block_of(t))),
                );
                key
            })
            .collect();
        let refined = Partition::from_keys(&keys);
        if refined.len() == partition.len() {
            return refined;
        }
        partition = refined;
    }
}

/// Whether `g` is follower-separated.
pub fn is_follower_separated(g: &LabeledGraph) -> bool {
    follower_partition(g).is_discrete()
}

/// Label-preserving isomorphism test for deterministic, follower-separated
/// graphs over the same alphabet.
pub fn graphs_isomorphic(g: &LabeledGraph, h: &LabeledGraph) -> Result<bool> {
    if !is_follower_separated(g) || !is_follower_separated(h) {
        return Err(Error::NotFollowerSeparated);
    }
    if g.alphabet() != h.alphabet() || g.len() != h.len() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let offset = g.len();
    let states: Vec<StateInfo> = g.states().iter().chain(h.states()).cloned().collect();
    let edges = g.edges().chain(h.edges().map(|mut e| {
        e.from = StateId(e.from.0 + offset);
        e.to = StateId(e.to.0 + offset);
        e
    }));
    let union = LabeledGraph::assemble(g.alphabet().clone(), states, edges)?;
    let joint = follower_partition(&union);
    let mut image = vec![StateId(0); g.len()];
    for block in joint.blocks() {
        match block.as_slice() {
            [s, t] if s.0 < offset && t.0 >= offset => image[s.0] = StateId(t.0 - offset),
            _ => return Ok(false),
        }
    }
    for s in g.ids() {
        for a in g.alphabet().symbols() {
            if g.next(s, a).map(|t| image[t.0]) != h.next(image[s.0], a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmr::CmrAutomaton;
    use crate::graph::tests::edge;
    use crate::words::{Alphabet, ForbiddenSet};

    fn presentation(alphabet: &[&str], words: &[&str]) -> (CmrAutomaton, LabeledGraph) {
        let d = CmrAutomaton::new(&ForbiddenSet::from_strs(alphabet, words).unwrap());
        let g = d.presentation().clone();
        (d, g)
    }

    #[test]
    fn two_word_refinement_merges_level_three() {
        let (_, g) = presentation(&["a", "b", "c"], &["aaaa", "abaa"]);
        let p = follower_partition(&g);
        let merged: Vec<Vec<&str>> = p
            .merged_blocks()
            .map(|b| b.iter().map(|&s| g.name(s)).collect())
            .collect();
        assert_eq!(merged, vec![vec!["aaa", "aba"]]);
        assert_eq!(p.len(), 5);
    }

    #[test]
    fn single_word_presentations_are_separated() {
        for w in ["abba", "aab", "abab", "bbbab"] {
            let (_, g) = presentation(&["a", "b"], &[w]);
            assert!(follower_partition(&g).is_discrete(), "{w}");
        }
    }

    #[test]
    fn edgeless_states_share_a_block() {
        let a = Alphabet::from_chars("ab").unwrap();
        let g = LabeledGraph::assemble(
            a,
            vec![
                StateInfo::named("x"),
                StateInfo::named("y"),
                StateInfo::named("z"),
            ],
            vec![edge(0, 1, 0), edge(0, 2, 1)],
        )
        .unwrap();
        let p = follower_partition(&g);
        assert_eq!(
            p.blocks(),
            &[vec![StateId(0)], vec![StateId(1), StateId(2)]]
        );
    }

    #[test]
    fn isomorphism_examples() {
        let (_, g) = presentation(&["a", "b"], &["aa"]);
        assert!(graphs_isomorphic(&g, &g).unwrap());

        let a = Alphabet::from_chars("ab").unwrap();
        let cycle = LabeledGraph::assemble(
            a.clone(),
            vec![StateInfo::named("p"), StateInfo::named("q")],
            vec![edge(0, 1, 0), edge(1, 0, 1)],
        )
        .unwrap();
        let loop1 = LabeledGraph::assemble(
            a.clone(),
            vec![StateInfo::named("s")],
            vec![edge(0, 0, 0), edge(0, 0, 1)],
        )
        .unwrap();
        assert!(!graphs_isomorphic(&cycle, &loop1).unwrap());

        // relabelled copy of the golden-mean presentation
        let swapped = LabeledGraph::assemble(
            a,
            vec![StateInfo::named("A"), StateInfo::named("E")],
            vec![edge(1, 0, 0), edge(1, 1, 1), edge(0, 1, 1)],
        )
        .unwrap();
        assert!(graphs_isomorphic(&g, &swapped).unwrap());
    }

    #[test]
    fn isomorphism_requires_separation() {
        let (_, g) = presentation(&["a", "b", "c"], &["aaaa", "abaa"]);
        assert_eq!(graphs_isomorphic(&g, &g), Err(Error::NotFollowerSeparated));
    }
}
