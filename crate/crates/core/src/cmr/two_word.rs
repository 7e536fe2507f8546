//! Two-word forbidden sets: the fork state, the `{aⁿ, a𝐱}` run analysis
//! that predicts the cover size, and the general size bounds.

use std::collections::BTreeSet;

use super::CmrAutomaton;
use crate::error::{Error, Result};
use crate::words::{prefix_suffix_stats, ForbiddenSet, Symbol, Word};

fn two_equal_words(f: &ForbiddenSet) -> Result<(&Word, &Word)> {
    match f.words() {
        [w1, w2] if w1.len() == w2.len() => Ok((w1, w2)),
        [_, _] => Err(Error::UnequalLengths),
        other => Err(Error::NotTwoWords(other.len())),
    }
}

/// The longest common prefix of two equal-length forbidden words: the one
/// state of `G_F` with two forward edges.
pub fn fork_state(f: &ForbiddenSet) -> Result<Word> {
    let (w1, w2) = two_equal_words(f)?;
    let (rho, _) = prefix_suffix_stats(w1, w2)?;
    Ok(w1.prefix(rho))
}

/// `(2n − ρ − σ − 1, 2n − ρ − 1)` for two distinct words of length `n`.
pub fn size_bounds(w1: &[Symbol], w2: &[Symbol], alphabet_size: usize) -> Result<(usize, usize)> {
    if w1.len() != w2.len() {
        return Err(Error::UnequalLengths);
    }
    let (rho, sigma) = prefix_suffix_stats(w1, w2)?;
    if alphabet_size < 3 {
        return Err(Error::AlphabetTooSmall(alphabet_size));
    }
    let n = w1.len();
    // distinct equal-length words have rho + sigma <= n - 1
    Ok((2 * n - rho - sigma - 1, 2 * n - rho - 1))
}

/// Bounds on the Shannon cover size of a two-word, equal-length forbidden
/// set over at least three symbols.
pub fn cover_size_bounds(f: &ForbiddenSet) -> Result<(usize, usize)> {
    let (w1, w2) = two_equal_words(f)?;
    size_bounds(w1, w2, f.alphabet().len())
}

/// Run structure of `F = {z₁, z₂}` with `z₁ = aⁿ` and `z₂ = a𝐱`, where
/// `z₂ = a^{x₁} β⁽¹⁾ a^{x₂} ⋯ β⁽q⁻¹⁾ a^{x_q}` with every `β` nonempty and
/// free of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2Analysis {
    pub run_symbol: Symbol,
    pub n: usize,
    pub z1: Word,
    pub z2: Word,
    /// `x₁..x_q`
    pub x_runs: Vec<usize>,
    /// `β⁽¹⁾..β⁽q⁻¹⁾`
    pub betas: Vec<Word>,
    /// `p₀ = a` and `p_j = a^{x₁}β⁽¹⁾⋯a^{x_j}β⁽ʲ⁾a`. The last one,
    /// `p_{q−1}`, is present only when it is a prefix of `z₂` (`x_q ≥ 1`).
    pub p_prefixes: Vec<Word>,
    /// Indices `k` with `f^r(p_{q−1}) = p_k` for some `r ≥ 1`. Computed in the
    /// `x₁ < x_q` branch only, as are `chi`, `x_star` and `merge_level`.
    pub ind_f: Option<BTreeSet<usize>>,
    pub chi: Option<BTreeSet<usize>>,
    pub x_star: Option<usize>,
    /// Smallest level at which the paired states merge.
    pub merge_level: Option<usize>,
    pub predicted_nu: usize,
}

impl Z2Analysis {
    pub fn q(&self) -> usize {
        self.x_runs.len()
    }

    pub fn x1(&self) -> usize {
        self.x_runs[0]
    }

    pub fn xq(&self) -> usize {
        *self.x_runs.last().expect("q >= 2")
    }

    /// The `x₁ ≥ x_q` branch, where `G_F` is already follower-separated.
    pub fn follower_separated(&self) -> bool {
        self.x1() >= self.xq()
    }
}

/// Factorizes `z₂` into `a`-runs separated by nonempty `a`-free blocks.
fn factorize(z2: &[Symbol], a: Symbol) -> (Vec<usize>, Vec<Word>) {
    let mut runs = Vec::new();
    let mut betas = Vec::new();
    let mut i = 0;
    loop {
        let start = i;
        while i < z2.len() && z2[i] == a {
            i += 1;
        }
        runs.push(i - start);
        if i == z2.len() {
            break;
        }
        let start = i;
        while i < z2.len() && z2[i] != a {
            i += 1;
        }
        betas.push(Word::new(z2[start..i].to_vec()));
        if i == z2.len() {
            runs.push(0);
            break;
        }
    }
    (runs, betas)
}

/// Analyses `F = {aⁿ, a𝐱}` (`𝐱 ≠ aⁿ⁻¹`) over at least three symbols and
/// predicts the number of states of its Shannon cover.
pub fn z_family_analysis(f: &ForbiddenSet) -> Result<Z2Analysis> {
    let (w1, w2) = match f.words() {
        [w1, w2] => (w1, w2),
        other => {
            return Err(Error::ShapeMismatch(format!(
                "expected two words, found {}",
                other.len()
            )))
        }
    };
    if w1.len() != w2.len() {
        return Err(Error::ShapeMismatch("words have unequal lengths".into()));
    }
    let is_run = |w: &Word| w.is_power_of(w[0]);
    let (z1, z2) = match (is_run(w1), is_run(w2)) {
        (true, false) => (w1, w2),
        (false, true) => (w2, w1),
        _ => {
            return Err(Error::ShapeMismatch(
                "exactly one word must be a single-symbol run".into(),
            ))
        }
    };
    let a = z1[0];
    if z2[0] != a {
        return Err(Error::ShapeMismatch(
            "both words must start with the run symbol".into(),
        ));
    }
    let sigma = f.alphabet().len();
    if sigma < 3 {
        return Err(Error::AlphabetTooSmall(sigma));
    }
    let n = z1.len();
    let (x_runs, betas) = factorize(z2, a);
    debug_assert!(x_runs.len() >= 2);
    let q = x_runs.len();
    let x1 = x_runs[0];
    let xq = x_runs[q - 1];

    let mut p_prefixes = vec![Word::repeat(a, 1)];
    let mut len = 0;
    for j in 1..q {
        len += x_runs[j - 1] + betas[j - 1].len();
        if len < n {
            p_prefixes.push(z2.prefix(len + 1));
        }
    }

    if x1 >= xq {
        return Ok(Z2Analysis {
            run_symbol: a,
            n,
            z1: z1.clone(),
            z2: z2.clone(),
            x_runs,
            betas,
            p_prefixes,
            ind_f: None,
            chi: None,
            x_star: None,
            merge_level: None,
            predicted_nu: 2 * n - x1 - 1,
        });
    }

    // x_q > x₁ ≥ 1, so p_{q−1} is a proper prefix of z₂ and a state of G_F.
    let d = CmrAutomaton::new(f);
    let state_of = |w: &Word| d.state(w).expect("prefixes of z2 are states");
    let p_states: Vec<_> = p_prefixes.iter().map(state_of).collect();
    let last = *p_states.last().expect("p_{q-1} exists");
    let mut ind_f = BTreeSet::new();
    let mut cur = last;
    for _ in 0..q {
        let next = d
            .failure(cur)
            .ok_or_else(|| Error::FailureChainBroken(d.render(last)))?;
        let k = p_states
            .iter()
            .position(|&s| s == next)
            .ok_or_else(|| Error::FailureChainBroken(d.render(last)))?;
        ind_f.insert(k);
        cur = next;
        if k == 0 {
            break;
        }
    }
    if !ind_f.contains(&0) {
        return Err(Error::FailureChainBroken(d.render(last)));
    }

    let chi: BTreeSet<usize> = ind_f
        .iter()
        .filter(|&&k| k > 0)
        .map(|&k| x_runs[k])
        .filter(|&x| x1 <= x && x < xq)
        .collect();
    let x_star = chi.iter().next_back().copied().unwrap_or(x1 - 1);
    let merge_level = p_prefixes[q - 1].len() + x_star;
    Ok(Z2Analysis {
        run_symbol: a,
        n,
        z1: z1.clone(),
        z2: z2.clone(),
        x_runs,
        betas,
        p_prefixes,
        ind_f: Some(ind_f),
        chi: Some(chi),
        x_star: Some(x_star),
        merge_level: Some(merge_level),
        predicted_nu: 2 * n - x1 - (xq - x_star),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ABC: [&str; 3] = ["a", "b", "c"];

    fn set(words: &[&str]) -> ForbiddenSet {
        ForbiddenSet::from_strs(&ABC, words).unwrap()
    }

    fn w(f: &ForbiddenSet, s: &str) -> Word {
        f.alphabet().parse_word(s).unwrap()
    }

    #[test]
    fn fork_states() {
        let f = set(&["aaaa", "abaa"]);
        assert_eq!(fork_state(&f).unwrap(), w(&f, "a"));
        let f = set(&["aaaa", "aaab"]);
        assert_eq!(fork_state(&f).unwrap(), w(&f, "aaa"));
        assert_eq!(fork_state(&set(&["abc"])), Err(Error::NotTwoWords(1)));
        assert_eq!(
            fork_state(&set(&["abc", "ba"])).unwrap_err(),
            Error::UnequalLengths
        );
    }

    #[test]
    fn factorization_reconstructs() {
        let a = Symbol::new(0);
        let f = set(&["aaaaaa", "abbaca"]);
        let (runs, betas) = factorize(&w(&f, "abbaca"), a);
        assert_eq!(runs, vec![1, 1, 1]);
        assert_eq!(betas, vec![w(&f, "bb"), w(&f, "c")]);
        let (runs, betas) = factorize(&w(&f, "aabc"), a);
        assert_eq!(runs, vec![2, 0]);
        assert_eq!(betas, vec![w(&f, "bc")]);
    }

    #[test]
    fn follower_separated_branch() {
        let f = set(&["aaa", "aba"]);
        let z = z_family_analysis(&f).unwrap();
        assert_eq!(z.x_runs, vec![1, 1]);
        assert_eq!(z.q(), 2);
        assert!(z.follower_separated());
        assert_eq!(z.predicted_nu, 4);
        assert_eq!(z.merge_level, None);
    }

    #[test]
    fn single_merge_level() {
        let f = set(&["aaaa", "abaa"]);
        let z = z_family_analysis(&f).unwrap();
        assert_eq!(z.x_runs, vec![1, 2]);
        assert_eq!(z.p_prefixes, vec![w(&f, "a"), w(&f, "aba")]);
        assert_eq!(z.ind_f, Some(BTreeSet::from([0])));
        assert_eq!(z.chi, Some(BTreeSet::new()));
        assert_eq!(z.x_star, Some(0));
        assert_eq!(z.merge_level, Some(3));
        assert_eq!(z.predicted_nu, 5);
    }

    #[test]
    fn failure_chain_through_middle_prefix() {
        let f = set(&["aaaaaa", "ababaa"]);
        let z = z_family_analysis(&f).unwrap();
        assert_eq!(z.x_runs, vec![1, 1, 2]);
        assert_eq!(z.p_prefixes, vec![w(&f, "a"), w(&f, "aba"), w(&f, "ababa")]);
        assert_eq!(z.ind_f, Some(BTreeSet::from([0, 1])));
        assert_eq!(z.chi, Some(BTreeSet::from([1])));
        assert_eq!(z.x_star, Some(1));
        assert_eq!(z.merge_level, Some(6));
        assert_eq!(z.predicted_nu, 10);
    }

    #[test]
    fn trailing_non_run_symbol() {
        let f = set(&["aaaa", "aabc"]);
        let z = z_family_analysis(&f).unwrap();
        assert_eq!(z.x_runs, vec![2, 0]);
        assert_eq!(z.p_prefixes, vec![w(&f, "a")]);
        assert_eq!(z.predicted_nu, 8 - 2 - 1);
    }

    #[test]
    fn shape_and_alphabet_errors() {
        assert!(matches!(
            z_family_analysis(&set(&["abc", "acb"])),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            z_family_analysis(&set(&["aaa", "bab"])),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            z_family_analysis(&set(&["aaa", "bbb"])),
            Err(Error::ShapeMismatch(_))
        ));
        let bin = ForbiddenSet::from_strs(&["a", "b"], &["aaa", "aba"]).unwrap();
        assert_eq!(z_family_analysis(&bin), Err(Error::AlphabetTooSmall(2)));
    }

    #[test]
    fn size_bound_examples() {
        assert_eq!(cover_size_bounds(&set(&["abc", "acb"])), Ok((4, 4)));
        assert_eq!(cover_size_bounds(&set(&["aaaa", "abaa"])), Ok((4, 6)));
        let f = set(&["ab"]);
        assert_eq!(
            size_bounds(&w(&f, "ab"), &w(&f, "ab"), 3),
            Err(Error::IdenticalWords)
        );
        let bin = ForbiddenSet::from_strs(&["a", "b"], &["ab", "ba"]).unwrap();
        assert_eq!(cover_size_bounds(&bin), Err(Error::AlphabetTooSmall(2)));
    }
}
