//! Slow reference implementations that never touch the CMR automaton.
//!
//! Everything here works directly from the forbidden words: explicit
//! enumeration, window checks over the last `ℓ_max − 1` symbols, and the
//! higher edge graph. The fast paths in [`crate::cmr`] and
//! [`crate::minimize`] are validated against these.

mod windows;

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph, StateId, StateInfo};
use crate::words::{is_subword, Alphabet, ForbiddenSet, Word};

pub use windows::{brute_language_irreducible, compare_language, irreducibility_witness};

/// Prefix-closed set of words up to a length bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedLanguage {
    pub words: BTreeSet<Word>,
    pub bound: usize,
}

impl BoundedLanguage {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    /// Number of members of each length `0..=bound`.
    pub fn counts_by_length(&self) -> Vec<usize> {
        let mut counts = vec![0; self.bound + 1];
        for w in &self.words {
            counts[w.len()] += 1;
        }
        counts
    }

    /// Sorted JSON array of rendered words.
    pub fn to_json(&self, alphabet: &Alphabet) -> String {
        let words: Vec<String> = self.words.iter().map(|w| alphabet.render(w)).collect();
        serde_json::to_string(&words).expect("strings serialize")
    }
}

/// Every word of length `<= bound` avoiding `f`, grown breadth-first with a
/// suffix check on each extension.
pub fn enumerate_language(f: &ForbiddenSet, bound: usize) -> BoundedLanguage {
    let mut words = BTreeSet::new();
    let mut frontier = vec![Word::empty()];
    words.insert(Word::empty());
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &frontier {
            for a in f.alphabet().symbols() {
                let x = w.pushed(a);
                if !f.ends_with_forbidden(&x) {
                    next.push(x);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    BoundedLanguage { words, bound }
}

/// Words of length `<= bound` read along paths of `g` from any state.
pub fn generated_language(g: &LabeledGraph, bound: usize) -> BoundedLanguage {
    let mut words = BTreeSet::new();
    for s in g.ids() {
        words.extend(follower_words(g, s, bound).words);
    }
    BoundedLanguage { words, bound }
}

/// Words of length `<= bound` readable from `s`.
pub fn follower_words(g: &LabeledGraph, s: StateId, bound: usize) -> BoundedLanguage {
    let mut words = BTreeSet::new();
    let mut frontier = vec![(Word::empty(), s)];
    words.insert(Word::empty());
    for _ in 0..bound {
        let mut next = Vec::new();
        for (w, state) in &frontier {
            for (a, t) in g.out_edges(*state) {
                let x = w.pushed(a);
                words.insert(x.clone());
                next.push((x, t));
            }
        }
        frontier = next;
    }
    BoundedLanguage { words, bound }
}

/// Whether the follower sets of `s` and `t` agree on all words of length at
/// most `bound`: walks pairs of states reached by a common word and looks for
/// a label readable from one but not the other.
pub fn bounded_followers_agree(g: &LabeledGraph, s: StateId, t: StateId, bound: usize) -> bool {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(s, t, 0usize)]);
    seen.insert((s, t));
    while let Some((x, y, depth)) = queue.pop_front() {
        if depth == bound {
            continue;
        }
        for a in g.alphabet().symbols() {
            match (g.next(x, a), g.next(y, a)) {
                (None, None) => {}
                (Some(u), Some(v)) => {
                    if seen.insert((u, v)) {
                        queue.push_back((u, v, depth + 1));
                    }
                }
                _ => return false,
            }
        }
    }
    true
}

/// Follower-set equivalence decided at depth `|states| − 1`.
pub fn brute_equivalent(g: &LabeledGraph, s: StateId, t: StateId) -> bool {
    bounded_followers_agree(g, s, t, g.len().saturating_sub(1))
}

/// The longest member of `candidates` that is a suffix of `u`.
pub fn naive_longest_suffix(u: &[crate::words::Symbol], candidates: &[Word]) -> Word {
    candidates
        .iter()
        .filter(|c| u.ends_with(c))
        .max_by_key(|c| c.len())
        .cloned()
        .unwrap_or_default()
}

/// The higher edge graph of order `ℓ_max`: states are the admissible words of
/// length `ℓ_max − 1`, and `u → v` on `a` when `ua` is admissible and `v` is
/// `ua` without its first symbol.
pub fn debruijn_presentation(f: &ForbiddenSet) -> Result<LabeledGraph> {
    if f.max_len() < 2 {
        return Err(Error::OrderTooSmall);
    }
    let alphabet = f.alphabet();
    let order = f.max_len() - 1;
    let states: Vec<Word> = alphabet
        .words_of_length(order)
        .into_iter()
        .filter(|w| f.admits(w))
        .collect();
    let mut edges = Vec::new();
    for (i, u) in states.iter().enumerate() {
        for a in alphabet.symbols() {
            let ua = u.pushed(a);
            if !f.admits(&ua) {
                continue;
            }
            let v = Word::new(ua[1..].to_vec());
            let j = states.binary_search(&v).expect("suffix of admissible word");
            edges.push(Edge {
                from: StateId(i),
                to: StateId(j),
                label: a,
            });
        }
    }
    let infos = states
        .into_iter()
        .map(|w| StateInfo::for_word(alphabet, w))
        .collect();
    LabeledGraph::assemble(alphabet.clone(), infos, edges)
}

/// One state with a self-loop on every symbol that is not itself forbidden;
/// presents `S_F` exactly when `ℓ_max = 1`.
pub fn full_shift_presentation(f: &ForbiddenSet) -> LabeledGraph {
    let alphabet = f.alphabet();
    let edges = alphabet
        .symbols()
        .filter(|&a| !f.words().iter().any(|w| w.symbols() == [a]))
        .map(|a| Edge {
            from: StateId(0),
            to: StateId(0),
            label: a,
        });
    LabeledGraph::assemble(alphabet.clone(), vec![StateInfo::named("*")], edges)
        .expect("single-state loops are deterministic")
}

/// Literal search for a connector `v` with `ℓ(v) <= max_len` and `uvw`
/// admissible. Exponential; for cross-checking on tiny inputs.
pub fn naive_connectable(f: &ForbiddenSet, u: &Word, w: &Word, max_len: usize) -> bool {
    (0..=max_len).any(|len| {
        f.alphabet()
            .words_of_length(len)
            .iter()
            .any(|v| f.admits(&u.concat(v).concat(w)))
    })
}

/// Literal form of the bounded irreducibility test, enumerating every `u`,
/// `w` and connector. Only usable for very small bounds.
pub fn naive_language_irreducible(f: &ForbiddenSet, bound: usize, connector: usize) -> bool {
    let lang = enumerate_language(f, bound);
    lang.words.iter().all(|u| {
        lang.words
            .iter()
            .all(|w| naive_connectable(f, u, w, connector))
    })
}

/// Whether `sub` occurs in any word of `lang`.
pub fn language_mentions(lang: &BoundedLanguage, sub: &Word) -> bool {
    lang.words.iter().any(|w| is_subword(sub, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmr::CmrAutomaton;
    use crate::words::Symbol;

    fn set(alphabet: &[&str], words: &[&str]) -> ForbiddenSet {
        ForbiddenSet::from_strs(alphabet, words).unwrap()
    }

    fn rendered(f: &ForbiddenSet, lang: &BoundedLanguage) -> Vec<String> {
        lang.words.iter().map(|w| f.render(w)).collect()
    }

    #[test]
    fn debruijn_examples() {
        let f = set(&["a", "b"], &["aa"]);
        let g = debruijn_presentation(&f).unwrap();
        let names: Vec<&str> = g.states().iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["a", "b"]);
        let edges: Vec<(usize, usize, usize)> = g
            .edges()
            .map(|e| (e.from.0, e.to.0, e.label.index()))
            .collect();
        assert_eq!(edges, vec![(0, 1, 1), (1, 0, 0), (1, 1, 1)]);

        let f = set(&["0", "1"], &["00", "11"]);
        let g = debruijn_presentation(&f).unwrap();
        let edges: Vec<(usize, usize, usize)> = g
            .edges()
            .map(|e| (e.from.0, e.to.0, e.label.index()))
            .collect();
        assert_eq!(edges, vec![(0, 1, 1), (1, 0, 0)]);

        let f = set(&["0", "1"], &["00", "1101", "111"]);
        let g = debruijn_presentation(&f).unwrap();
        let names: Vec<&str> = g.states().iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["010", "011", "101", "110"]);
    }

    #[test]
    fn debruijn_order_one_uses_full_shift() {
        let f = set(&["a", "b", "c"], &["a"]);
        assert_eq!(debruijn_presentation(&f).unwrap_err(), Error::OrderTooSmall);
        let g = full_shift_presentation(&f);
        assert_eq!(g.len(), 1);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn follower_word_examples() {
        let f = set(&["0", "1"], &["00", "1101", "111"]);
        let d = CmrAutomaton::new(&f);
        let g = d.presentation();
        assert_eq!(follower_words(g, StateId(0), 0).len(), 1);
        let s110 = g
            .find_word(&f.alphabet().parse_word("110").unwrap())
            .unwrap();
        assert_eq!(follower_words(g, s110, 3).len(), 1);

        let f = set(&["a", "b"], &["aa"]);
        let d = CmrAutomaton::new(&f);
        let lang = follower_words(d.presentation(), StateId(1), 2);
        assert_eq!(rendered(&f, &lang), ["ε", "b", "ba", "bb"]);
    }

    #[test]
    fn brute_equivalence_examples() {
        let f = set(&["a", "b", "c"], &["aaaa", "abaa"]);
        let d = CmrAutomaton::new(&f);
        let g = d.presentation();
        let id = |s: &str| g.find_word(&f.alphabet().parse_word(s).unwrap()).unwrap();
        assert!(brute_equivalent(g, id("aa"), id("aa")));
        assert!(brute_equivalent(g, id("aaa"), id("aba")));
        assert!(!brute_equivalent(g, id("aa"), id("ab")));

        let f = set(&["0", "1"], &["00", "1101", "111"]);
        let d = CmrAutomaton::new(&f);
        let g = d.presentation();
        assert!(!brute_equivalent(g, StateId(0), StateId(1)));
        assert!(!bounded_followers_agree(g, StateId(0), StateId(1), 1));
    }

    #[test]
    fn enumeration_examples() {
        let f = set(&["0", "1"], &["0", "1"]);
        assert_eq!(enumerate_language(&f, 5).len(), 1);

        let f = set(&["a", "b"], &["aa"]);
        let lang = enumerate_language(&f, 3);
        assert_eq!(lang.len(), 11);
        assert_eq!(lang.counts_by_length(), vec![1, 2, 3, 5]);

        let f = set(&["0", "1"], &["00", "1101", "111"]);
        let lang = enumerate_language(&f, 2);
        assert_eq!(rendered(&f, &lang), ["ε", "0", "01", "1", "10", "11"]);
        assert_eq!(
            lang.to_json(f.alphabet()),
            r#"["ε","0","01","1","10","11"]"#
        );
    }

    #[test]
    fn naive_suffix_examples() {
        let f = set(&["0", "1"], &["00", "1101", "111"]);
        let d = CmrAutomaton::new(&f);
        let states: Vec<Word> = d.ids().map(|s| d.word(s).clone()).collect();
        let u = f.alphabet().parse_word("1100").unwrap();
        assert_eq!(f.render(&naive_longest_suffix(&u, &states)), "00");
        assert_eq!(naive_longest_suffix(&u, &[Word::empty()]), Word::empty());

        let f = set(&["a", "b"], &["aa"]);
        let d = CmrAutomaton::new(&f);
        let states: Vec<Word> = d.ids().map(|s| d.word(s).clone()).collect();
        let ab = Word::new(vec![Symbol::new(0), Symbol::new(1)]);
        assert_eq!(naive_longest_suffix(&ab, &states), Word::empty());
    }

    #[test]
    fn enumeration_is_prefix_closed() {
        let f = set(&["a", "b", "c"], &["abc", "bb", "cac"]);
        let lang = enumerate_language(&f, 6);
        for w in &lang.words {
            if !w.is_empty() {
                assert!(lang.contains(&w.prefix(w.len() - 1)));
            }
            assert!(f.admits(w));
        }
        assert!(!language_mentions(&lang, &f.words()[0]));
    }
}
