//! Exact bounded checks over the window graph of `S_F`.
//!
//! Whether an admissible word stays admissible after appending more symbols
//! depends only on its last `ℓ_max − 1` symbols (its context). The window
//! graph has one node per admissible word of length at most `ℓ_max − 1` and
//! an edge `c → c'` on `a` when `ca` is admissible and `c'` is the context of
//! `ca`. Walking it replaces explicit enumeration of `S_F`.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::bits::BitSet;
use crate::graph::{LabeledGraph, StateId};
use crate::words::{ForbiddenSet, Symbol, Word};

struct WindowGraph {
    /// Node words in shortlex order; node 0 is ε.
    words: Vec<Word>,
    succ: Vec<Vec<Option<usize>>>,
}

impl WindowGraph {
    fn new(f: &ForbiddenSet) -> Self {
        let order = f.max_len() - 1;
        let sigma = f.alphabet().len();
        let mut words = vec![Word::empty()];
        let mut index: HashMap<Word, usize> = HashMap::from([(Word::empty(), 0)]);
        let mut succ = Vec::new();
        let mut i = 0;
        while i < words.len() {
            let mut row = vec![None; sigma];
            for a in f.alphabet().symbols() {
                let x = words[i].pushed(a);
                if f.ends_with_forbidden(&x) {
                    continue;
                }
                let ctx = x.suffix(x.len().min(order));
                let next = *index.entry(ctx.clone()).or_insert_with(|| {
                    words.push(ctx);
                    words.len() - 1
                });
                row[a.index()] = Some(next);
            }
            succ.push(row);
            i += 1;
        }
        WindowGraph { words, succ }
    }

    fn len(&self) -> usize {
        self.words.len()
    }

    fn next(&self, c: usize, a: Symbol) -> Option<usize> {
        self.succ[c][a.index()]
    }

    /// For every node, the nodes reachable in at most `bound` steps, and
    /// whether those sets already equal the unbounded closure.
    fn bounded_reach(&self, bound: usize) -> (Vec<BitSet>, bool) {
        let n = self.len();
        let mut reach: Vec<BitSet> = (0..n)
            .map(|c| {
                let mut s = BitSet::new(n);
                s.insert(c);
                s
            })
            .collect();
        for _ in 0..bound {
            let next: Vec<BitSet> = (0..n)
                .map(|c| {
                    let mut row = reach[c].clone();
                    for t in self.succ[c].iter().flatten() {
                        row.union_with(&reach[*t]);
                    }
                    row
                })
                .collect();
            if next == reach {
                return (reach, true);
            }
            reach = next;
        }
        (reach, false)
    }
}

/// Outcome of comparing a graph's bounded language with `S_F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    /// Shortest (then lexicographically first) offending word.
    pub word: Word,
    /// Whether `word` belongs to `S_F`; if so the graph misses it, otherwise
    /// the graph generates a word outside `S_F`.
    pub admissible: bool,
}

/// Compares the words of length `<= bound` generated by `g` from any state
/// with those of `S_F`. Returns `None` when the two sets agree.
pub fn compare_language(g: &LabeledGraph, f: &ForbiddenSet, bound: usize) -> Option<Discrepancy> {
    assert_eq!(
        g.alphabet(),
        f.alphabet(),
        "graph and forbidden set use different alphabets"
    );
    let windows = WindowGraph::new(f);
    let mut start_set = BitSet::new(g.len());
    for s in g.ids() {
        start_set.insert(s.0);
    }
    if g.is_empty() {
        // an empty graph generates nothing, not even ε
        return Some(Discrepancy {
            word: Word::empty(),
            admissible: true,
        });
    }
    // (context, graph states, length, parent and symbol)
    type Node = (usize, BitSet, usize, Option<(usize, Symbol)>);
    let mut nodes: Vec<Node> = vec![(0, start_set.clone(), 0, None)];
    let mut seen: HashSet<(usize, BitSet)> = HashSet::from([(0, start_set)]);
    let mut queue = VecDeque::from([0]);
    let word_of = |nodes: &[Node], mut i: usize| {
        let mut symbols = Vec::new();
        while let Some((parent, a)) = nodes[i].3 {
            symbols.push(a);
            i = parent;
        }
        symbols.reverse();
        Word::new(symbols)
    };
    while let Some(i) = queue.pop_front() {
        let (ctx, ref set, depth, _) = nodes[i];
        if depth == bound {
            continue;
        }
        let set = set.clone();
        for a in g.alphabet().symbols() {
            let next_ctx = windows.next(ctx, a);
            let mut image = BitSet::new(g.len());
            for s in set.iter() {
                if let Some(t) = g.next(StateId(s), a) {
                    image.insert(t.0);
                }
            }
            match (next_ctx, image.is_empty()) {
                (None, true) => {}
                (Some(c), false) => {
                    if seen.insert((c, image.clone())) {
                        nodes.push((c, image, depth + 1, Some((i, a))));
                        queue.push_back(nodes.len() - 1);
                    }
                }
                (next_ctx, _) => {
                    return Some(Discrepancy {
                        word: word_of(&nodes, i).pushed(a),
                        admissible: next_ctx.is_some(),
                    });
                }
            }
        }
    }
    None
}

/// First pair `(u, w)` of words of `S_F`, each of length `<= bound`, such
/// that no `v` of length `<= connector` makes `uvw` admissible. Pairs are
/// scanned with `u` in shortlex order, then `w` in shortlex order.
pub fn irreducibility_witness(
    f: &ForbiddenSet,
    bound: usize,
    connector: usize,
) -> Option<(Word, Word)> {
    let windows = WindowGraph::new(f);
    let depth = bound.min(f.max_len() - 1);
    let (reach, closed) = windows.bounded_reach(connector);
    let mut search = Search {
        windows: &windows,
        reach: &reach,
        closed,
        order: f.max_len() - 1,
        depth,
        by_set: HashMap::new(),
        by_node: vec![None; windows.len()],
    };
    let u = (0..windows.len())
        .take_while(|&c| windows.words[c].len() <= depth)
        .find(|&c| !search.passes(c))?;
    let w = first_unreadable(&windows, &reach[u], depth).expect("failing node has a witness");
    Some((windows.words[u].clone(), w))
}

/// Memoized test of "every admissible word of length `<= depth` is readable
/// from some node reachable from `c`".
struct Search<'a> {
    windows: &'a WindowGraph,
    reach: &'a [BitSet],
    /// `reach` is the full forward closure, so it contains the closure of
    /// every successor.
    closed: bool,
    order: usize,
    depth: usize,
    by_set: HashMap<&'a BitSet, bool>,
    by_node: Vec<Option<bool>>,
}

impl Search<'_> {
    fn passes(&mut self, c: usize) -> bool {
        if let Some(known) = self.by_node[c] {
            return known;
        }
        // successors of a short context are longer, so this terminates
        let via_successor = self.closed
            && self.windows.words[c].len() < self.order
            && (0..self.windows.succ[c].len())
                .filter_map(|a| self.windows.succ[c][a])
                .any(|t| self.passes(t));
        let result = via_successor || {
            let set = &self.reach[c];
            match self.by_set.get(set) {
                Some(&known) => known,
                None => {
                    let known = first_unreadable(self.windows, set, self.depth).is_none();
                    self.by_set.insert(set, known);
                    known
                }
            }
        };
        self.by_node[c] = Some(result);
        result
    }
}

/// Bounded falsifier for irreducibility of `S_F`: `false` is conclusive,
/// `true` only says no counterexample exists within the bounds.
pub fn brute_language_irreducible(f: &ForbiddenSet, bound: usize, connector: usize) -> bool {
    irreducibility_witness(f, bound, connector).is_none()
}

/// Shortlex-first admissible word of length `<= depth` that cannot be read
/// from any node of `from`.
fn first_unreadable(windows: &WindowGraph, from: &BitSet, depth: usize) -> Option<Word> {
    // level by level: (word as read from ε, its node, nodes of `from` that read it)
    let mut level: Vec<(Word, usize, Vec<usize>)> = vec![(Word::empty(), 0, from.iter().collect())];
    for _ in 0..depth {
        let mut next_level = Vec::new();
        for (w, node, image) in &level {
            for (a, target) in windows.succ[*node].iter().enumerate() {
                let Some(target) = *target else { continue };
                let a = Symbol::new(a);
                let mut next: Vec<usize> =
                    image.iter().filter_map(|&s| windows.next(s, a)).collect();
                let x = w.pushed(a);
                if next.is_empty() {
                    return Some(x);
                }
                next.sort_unstable();
                next.dedup();
                next_level.push((x, target, next));
            }
        }
        level = next_level;
    }
    None
}
