//! Generators of forbidden sets for sweeps and tests.

use rand::Rng;

use crate::words::{is_subword, Alphabet, ForbiddenSet, Symbol, Word};

/// `a b` for two symbols, `a b c` for three, and so on.
pub fn letters(size: usize) -> Alphabet {
    assert!((1..=26).contains(&size), "alphabet size must be in 1..=26");
    Alphabet::new((b'a'..b'a' + size as u8).map(|c| (c as char).to_string()))
        .expect("distinct letters")
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, len: usize) -> Word {
    (0..len)
        .map(|_| Symbol::new(rng.random_range(0..alphabet.len())))
        .collect()
}

/// Every single-word set with word length in `min_len..=max_len`.
pub fn single_word_sets(alphabet: &Alphabet, min_len: usize, max_len: usize) -> Vec<ForbiddenSet> {
    (min_len.max(1)..=max_len)
        .flat_map(|n| alphabet.words_of_length(n))
        .map(|w| ForbiddenSet::new(alphabet.clone(), [w]).expect("one nonempty word"))
        .collect()
}

/// Every unordered pair of distinct words of length `n`.
pub fn equal_length_pairs(alphabet: &Alphabet, n: usize) -> Vec<ForbiddenSet> {
    let words = alphabet.words_of_length(n);
    let mut out = Vec::new();
    for (i, w1) in words.iter().enumerate() {
        for w2 in &words[i + 1..] {
            out.push(
                ForbiddenSet::new(alphabet.clone(), [w1.clone(), w2.clone()])
                    .expect("distinct equal-length words"),
            );
        }
    }
    out
}

/// A pair of distinct random words of length `n`.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, n: usize) -> ForbiddenSet {
    loop {
        let w1 = random_word(rng, alphabet, n);
        let w2 = random_word(rng, alphabet, n);
        if w1 != w2 {
            return ForbiddenSet::new(alphabet.clone(), [w1, w2]).expect("distinct words");
        }
    }
}

/// `{aⁿ, a𝐱}` for every `𝐱 ≠ aⁿ⁻¹` of length `n − 1`, with `a` the first
/// symbol.
pub fn z_family(alphabet: &Alphabet, n: usize) -> Vec<ForbiddenSet> {
    let a = Symbol::new(0);
    let z1 = Word::repeat(a, n);
    alphabet
        .words_of_length(n - 1)
        .into_iter()
        .filter(|x| !x.is_power_of(a))
        .map(|x| {
            let z2 = Word::new(vec![a]).concat(&x);
            ForbiddenSet::new(alphabet.clone(), [z1.clone(), z2]).expect("distinct words")
        })
        .collect()
}

/// Random set of up to `max_words` words with lengths in `1..=max_len`.
/// Words containing an earlier pick, or contained in one, are skipped.
pub fn random_set<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_words: usize,
    max_len: usize,
) -> ForbiddenSet {
    let target = rng.random_range(1..=max_words.max(1));
    let mut words: Vec<Word> = Vec::new();
    for _ in 0..4 * target {
        if words.len() == target {
            break;
        }
        let len = rng.random_range(1..=max_len.max(1));
        let w = random_word(rng, alphabet, len);
        if words
            .iter()
            .all(|v| !is_subword(v, &w) && !is_subword(&w, v))
        {
            words.push(w);
        }
    }
    ForbiddenSet::new(alphabet.clone(), words).expect("pairwise non-redundant")
}

/// Every non-redundant set of `1..=max_words` words with lengths in
/// `1..=max_len`, in a fixed order.
pub fn all_sets(alphabet: &Alphabet, max_words: usize, max_len: usize) -> Vec<ForbiddenSet> {
    let candidates: Vec<Word> = (1..=max_len)
        .flat_map(|n| alphabet.words_of_length(n))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    extend_sets(alphabet, &candidates, max_words, 0, &mut chosen, &mut out);
    out
}

fn extend_sets(
    alphabet: &Alphabet,
    candidates: &[Word],
    max_words: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<ForbiddenSet>,
) {
    for i in from..candidates.len() {
        let w = &candidates[i];
        if chosen
            .iter()
            .any(|&j| is_subword(&candidates[j], w) || is_subword(w, &candidates[j]))
        {
            continue;
        }
        chosen.push(i);
        out.push(
            ForbiddenSet::new(
                alphabet.clone(),
                chosen.iter().map(|&j| candidates[j].clone()),
            )
            .expect("pairwise non-redundant"),
        );
        if chosen.len() < max_words {
            extend_sets(alphabet, candidates, max_words, i + 1, chosen, out);
        }
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exhaustive_counts() {
        let ab = letters(2);
        assert_eq!(single_word_sets(&ab, 2, 3).len(), 4 + 8);
        assert_eq!(equal_length_pairs(&letters(3), 2).len(), 36);
        assert_eq!(z_family(&letters(3), 4).len(), 26);
        let sets = all_sets(&ab, 2, 1);
        assert_eq!(sets.len(), 3);
    }

    #[test]
    fn random_sets_are_seeded() {
        let abc = letters(3);
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20)
                .map(|_| random_set(&mut rng, &abc, 3, 5).to_text())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }
}
