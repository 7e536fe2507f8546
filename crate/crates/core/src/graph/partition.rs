use std::collections::HashMap;
use std::hash::Hash;

use super::{LabeledGraph, StateId, StateInfo};
use crate::error::{Error, Result};

/// A partition of a graph's states into disjoint nonempty blocks.
///
/// Blocks are kept in canonical form: each block sorted, blocks ordered by
/// their smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<StateId>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Validates that `blocks` partitions `0..n`.
    pub fn new(blocks: Vec<Vec<StateId>>, n: usize) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for s in block {
                if s.0 >= n {
                    return Err(Error::UnknownState(s.0));
                }
                if block_of[s.0] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "state {s} appears in two blocks"
                    )));
                }
                block_of[s.0] = b;
            }
        }
        if let Some(missing) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "state {missing} is not covered"
            )));
        }
        Ok(Self::canonical(blocks, n))
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(|i| vec![StateId(i)]).collect(),
            block_of: (0..n).collect(),
        }
    }

    /// Groups states `0..keys.len()` by equal key.
    pub fn from_keys<K: Eq + Hash>(keys: &[K]) -> Self {
        let mut index: HashMap<&K, usize> = HashMap::new();
        let mut blocks: Vec<Vec<StateId>> = Vec::new();
        for (i, k) in keys.iter().enumerate() {
            let b = *index.entry(k).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(StateId(i));
        }
        Self::canonical(blocks, keys.len())
    }

    fn canonical(mut blocks: Vec<Vec<StateId>>, n: usize) -> Self {
        for b in &mut blocks {
            b.sort();
        }
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = vec![0; n];
        for (i, b) in blocks.iter().enumerate() {
            for s in b {
                block_of[s.0] = i;
            }
        }
        Partition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<StateId>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, s: StateId) -> usize {
        self.block_of[s.0]
    }

    pub fn same_block(&self, s: StateId, t: StateId) -> bool {
        self.block_of[s.0] == self.block_of[t.0]
    }

    /// True when every block is a singleton.
    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }

    /// Blocks with more than one member.
    pub fn merged_blocks(&self) -> impl Iterator<Item = &[StateId]> {
        self.blocks
            .iter()
            .filter(|b| b.len() > 1)
            .map(Vec::as_slice)
    }
}

/// Merges each block of `p` into a single state.
///
/// Every block must be merge-consistent: identical outgoing label sets, and
/// for each label all targets in one block. The merged state keeps the
/// display name of the member with the smallest word.
pub fn quotient(g: &LabeledGraph, p: &Partition) -> Result<LabeledGraph> {
    if p.block_of.len() != g.len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} states, graph has {}",
            p.block_of.len(),
            g.len()
        )));
    }
    let alphabet = g.alphabet();
    let mut states = Vec::with_capacity(p.len());
    let mut next = Vec::with_capacity(p.len() * alphabet.len());
    for block in &p.blocks {
        let rep = block[0];
        for a in alphabet.symbols() {
            let target = g.next(rep, a).map(|t| p.block_of(t));
            for &s in &block[1..] {
                if g.next(s, a).map(|t| p.block_of(t)) != target {
                    return Err(Error::InconsistentBlock {
                        block: block.iter().map(|s| s.0).collect(),
                        label: alphabet.name(a).to_string(),
                    });
                }
            }
            next.push(target.map(StateId));
        }
        let named = block
            .iter()
            .map(|&s| g.state(s))
            .min_by(|x, y| match (&x.word, &y.word) {
                (Some(u), Some(v)) => u.cmp(v),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => x.name.cmp(&y.name),
            })
            .expect("blocks are nonempty");
        states.push(StateInfo {
            name: named.name.clone(),
            word: named.word.clone(),
            sink: block.iter().any(|&s| g.state(s).sink),
        });
    }
    Ok(LabeledGraph::from_table(alphabet.clone(), states, next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{edge, words};
    use crate::words::Alphabet;

    #[test]
    fn partition_validation() {
        let ok = Partition::new(vec![vec![StateId(2), StateId(0)], vec![StateId(1)]], 3).unwrap();
        assert_eq!(ok.blocks()[0], vec![StateId(0), StateId(2)]);
        assert!(Partition::new(vec![vec![StateId(0)]], 2).is_err());
        assert!(Partition::new(vec![vec![StateId(0)], vec![StateId(0), StateId(1)]], 2).is_err());
        assert!(Partition::new(vec![vec![], vec![StateId(0)]], 1).is_err());
    }

    #[test]
    fn singleton_quotient_is_identity() {
        let a = Alphabet::from_chars("ab").unwrap();
        let g = LabeledGraph::assemble(
            a.clone(),
            words(&a, &["ε", "a"]),
            vec![edge(0, 1, 0), edge(0, 0, 1), edge(1, 0, 1)],
        )
        .unwrap();
        assert_eq!(quotient(&g, &Partition::singletons(2)).unwrap(), g);
    }

    #[test]
    fn inconsistent_labels_are_rejected() {
        let a = Alphabet::from_chars("ab").unwrap();
        let g = LabeledGraph::assemble(
            a.clone(),
            words(&a, &["ε", "a"]),
            vec![edge(0, 1, 0), edge(0, 0, 1), edge(1, 0, 1)],
        )
        .unwrap();
        let p = Partition::new(vec![vec![StateId(0), StateId(1)]], 2).unwrap();
        assert_eq!(
            quotient(&g, &p).unwrap_err(),
            Error::InconsistentBlock {
                block: vec![0, 1],
                label: "a".into()
            }
        );
    }

    #[test]
    fn merged_state_keeps_smallest_word() {
        let a = Alphabet::from_chars("ab").unwrap();
        // two states with identical edges into a shared sink-free loop
        let g = LabeledGraph::assemble(
            a.clone(),
            words(&a, &["ε", "bb", "ab"]),
            vec![edge(0, 1, 0), edge(0, 2, 1), edge(1, 0, 0), edge(2, 0, 0)],
        )
        .unwrap();
        let p = Partition::new(vec![vec![StateId(0)], vec![StateId(1), StateId(2)]], 3).unwrap();
        let q = quotient(&g, &p).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.name(StateId(1)), "ab");
        assert_eq!(
            q.next(StateId(0), crate::words::Symbol::new(0)),
            Some(StateId(1))
        );
    }
}
