//! Named checks of the structural lemmas and state-count theorems.
//!
//! [`cover_checks`] covers everything decidable from the automaton and a
//! cover report and runs inside [`crate::minimize::shannon_cover`].
//! [`check`] adds the oracle comparisons, which need search bounds.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::cmr::{cover_size_bounds, fork_state, z_family_analysis, CmrAutomaton};
use crate::graph::{is_irreducible_graph, LabeledGraph, StateId};
use crate::minimize::{
    follower_partition, graphs_isomorphic, is_follower_separated, reduce_presentation,
    shannon_cover, CoverReport, NerodeDfa,
};
use crate::oracle;
use crate::words::{ForbiddenSet, Word};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// The check failed; the text names a witness.
    Fails(String),
    /// The premises of the statement do not apply to this input.
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub verdict: Verdict,
}

impl CheckResult {
    fn new(name: &'static str, verdict: Verdict) -> Self {
        CheckResult { name, verdict }
    }

    fn from_witness(name: &'static str, witness: Option<String>) -> Self {
        Self::new(name, witness.map_or(Verdict::Holds, Verdict::Fails))
    }

    /// `None` when not applicable.
    pub fn holds(&self) -> Option<bool> {
        match self.verdict {
            Verdict::Holds => Some(true),
            Verdict::Fails(_) => Some(false),
            Verdict::NotApplicable(_) => None,
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Holds => write!(f, "pass  {}", self.name),
            Verdict::Fails(why) => write!(f, "FAIL  {}: {why}", self.name),
            Verdict::NotApplicable(why) => write!(f, "n/a   {}: {why}", self.name),
        }
    }
}

/// Search bounds for the oracle checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Length bound for language comparison.
    pub language: usize,
    /// Length bound on `u` and `w` in the irreducibility search.
    pub irreducibility: usize,
    /// Length bound on the connector `v`.
    pub connector: usize,
}

impl Bounds {
    /// `|G_F| + 2`, `|G_F|` and `|G_F|²`.
    pub fn defaults(d: &CmrAutomaton) -> Self {
        let n = d.presentation().len();
        Bounds {
            language: n + 2,
            irreducibility: n,
            connector: n * n,
        }
    }
}

/// Every check: structural, theorem and oracle. A degenerate language gets
/// the structural checks only.
pub fn check(f: &ForbiddenSet, bounds: Option<Bounds>) -> Vec<CheckResult> {
    let d = CmrAutomaton::new(f);
    let bounds = bounds.unwrap_or_else(|| Bounds::defaults(&d));
    match shannon_cover(f) {
        Ok(report) => {
            let mut out = cover_checks(&d, &report);
            out.extend(oracle_checks(&d, &report, bounds));
            out
        }
        Err(e) => {
            let mut out = structural_checks(&d);
            out.push(CheckResult::new(
                "shannon_cover",
                Verdict::NotApplicable(e.to_string()),
            ));
            out
        }
    }
}

/// Structural checks plus the theorem checks on a computed cover.
pub fn cover_checks(d: &CmrAutomaton, report: &CoverReport) -> Vec<CheckResult> {
    let mut out = structural_checks(d);
    out.extend([
        one_word_theorem(d, report),
        one_word_reducible_shapes(d, report),
        two_word_irreducibility(d, report),
        nu_formula(d, report),
        nu_bounds(d, report),
        shannon_characterization(report),
        idempotence(report),
    ]);
    out
}

/// Checks on `D_F` and `G_F` alone.
pub fn structural_checks(d: &CmrAutomaton) -> Vec<CheckResult> {
    vec![
        incoming_label_law(d),
        failure_shortcut(d),
        backward_edges_match_naive_suffix(d),
        self_reference_law(d),
        delta_monotonicity(d),
        forward_edge_lengths(d),
        state_count_bounds(d),
        path_lemma(d),
        nf_corollary(d),
        equal_length_law(d),
        single_word_separation(d),
        fork_uniqueness(d),
    ]
}

/// Comparisons against the brute-force oracles.
pub fn oracle_checks(d: &CmrAutomaton, report: &CoverReport, bounds: Bounds) -> Vec<CheckResult> {
    vec![
        refinement_soundness(d),
        language_equivalence(d, report, bounds.language),
        debruijn_isomorphism(d, report),
        irreducibility_cross_check(d, report, bounds),
    ]
}

fn na(name: &'static str, why: &str) -> CheckResult {
    CheckResult::new(name, Verdict::NotApplicable(why.to_string()))
}

/// Non-sink states of `D_F` other than `ε`.
fn inner_states(d: &CmrAutomaton) -> impl Iterator<Item = StateId> + '_ {
    d.ids().skip(1).filter(|&s| !d.is_sink(s))
}

fn incoming_label_law(d: &CmrAutomaton) -> CheckResult {
    let g = d.graph();
    let mut loops = vec![0usize; d.len()];
    let mut witness = None;
    for e in g.edges() {
        if e.from == e.to {
            loops[e.to.0] += 1;
        }
        let w = d.word(e.to);
        if let Some(&last) = w.last() {
            if last != e.label && witness.is_none() {
                witness = Some(format!(
                    "edge {} -> {} labelled {}",
                    d.render(e.from),
                    d.render(e.to),
                    g.alphabet().name(e.label)
                ));
            }
        }
    }
    if witness.is_none() {
        witness = d
            .ids()
            .skip(1)
            .find(|s| loops[s.0] > 1)
            .map(|s| format!("{} has {} self-loops", d.render(s), loops[s.0]));
    }
    CheckResult::from_witness("incoming_label_law", witness)
}

fn failure_shortcut(d: &CmrAutomaton) -> CheckResult {
    let witness = inner_states(d).find_map(|u| {
        let fu = d.failure(u)?;
        d.forbidden().alphabet().symbols().find_map(|a| {
            (!d.is_forward(u, a) && d.delta(u, a) != d.delta(fu, a)).then(|| {
                format!(
                    "δ({}, {}) differs from δ(f(u), a)",
                    d.render(u),
                    d.forbidden().alphabet().name(a)
                )
            })
        })
    });
    CheckResult::from_witness("failure_shortcut", witness)
}

fn backward_edges_match_naive_suffix(d: &CmrAutomaton) -> CheckResult {
    let states: Vec<Word> = d.ids().map(|s| d.word(s).clone()).collect();
    let witness = d.ids().filter(|&s| !d.is_sink(s)).find_map(|u| {
        d.forbidden().alphabet().symbols().find_map(|a| {
            let ua = d.word(u).pushed(a);
            let expected = oracle::naive_longest_suffix(&ua, &states);
            let target = d.delta(u, a)?;
            (d.word(target) != &expected).then(|| {
                format!(
                    "δ({}, {}) = {}, longest suffix is {}",
                    d.render(u),
                    d.forbidden().alphabet().name(a),
                    d.render(target),
                    d.forbidden().render(&expected)
                )
            })
        })
    });
    CheckResult::from_witness("backward_edges_match_naive_suffix", witness)
}

fn self_reference_law(d: &CmrAutomaton) -> CheckResult {
    let witness = d.ids().filter(|&s| !d.is_sink(s)).find_map(|u| {
        d.forbidden().alphabet().symbols().find_map(|a| {
            let ua = d.state(&d.word(u).pushed(a))?;
            let f_ua = d.failure(ua)?;
            ((f_ua == u) != d.word(u).is_power_of(a))
                .then(|| format!("f({}) = {}", d.render(ua), d.render(f_ua)))
        })
    });
    CheckResult::from_witness("self_reference_law", witness)
}

fn delta_monotonicity(d: &CmrAutomaton) -> CheckResult {
    let witness = inner_states(d).find_map(|v| {
        let dv = d.delta_gap(v).ok()?;
        let w = d.word(v);
        (1..w.len()).find_map(|l| {
            let u = d.state(&w[..l])?;
            let du = d.delta_gap(u).ok()?;
            (du > dv).then(|| format!("Δ({}) = {du} > Δ({}) = {dv}", d.render(u), d.render(v)))
        })
    });
    CheckResult::from_witness("delta_monotonicity", witness)
}

fn forward_edge_lengths(d: &CmrAutomaton) -> CheckResult {
    let witness = d.graph().edges().find_map(|e| {
        let from = d.word(e.from).len();
        let to = d.word(e.to).len();
        let ok = if d.is_forward(e.from, e.label) {
            to == from + 1
        } else {
            to <= from
        };
        (!ok).then(|| format!("edge {} -> {}", d.render(e.from), d.render(e.to)))
    });
    CheckResult::from_witness("forward_edge_lengths", witness)
}

fn state_count_bounds(d: &CmrAutomaton) -> CheckResult {
    let total: usize = d.forbidden().words().iter().map(|w| w.len()).sum();
    let k = d.forbidden().len();
    let witness = if d.len() > 1 + total {
        Some(format!("|D_F| = {} > {}", d.len(), 1 + total))
    } else if d.presentation().len() > 1 + total - k {
        Some(format!(
            "|G_F| = {} > {}",
            d.presentation().len(),
            1 + total - k
        ))
    } else {
        None
    };
    CheckResult::from_witness("state_count_bounds", witness)
}

/// For each state of `g`, the set of states it reaches (itself included).
fn reach_sets(g: &LabeledGraph) -> Vec<BTreeSet<StateId>> {
    g.ids()
        .map(|s| {
            let mut seen = BTreeSet::from([s]);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for (_, t) in g.out_edges(x) {
                    if seen.insert(t) {
                        queue.push_back(t);
                    }
                }
            }
            seen
        })
        .collect()
}

/// Backward edges leaving `v` that stay inside `G_F`.
fn surviving_backward_edges(d: &CmrAutomaton, v: StateId) -> usize {
    d.forbidden()
        .alphabet()
        .symbols()
        .filter(|&a| !d.is_forward(v, a) && d.delta(v, a).is_some_and(|t| !d.is_sink(t)))
        .count()
}

/// For every target `w` of `G_F` and every `v` meeting the edge-count
/// premise: if all states shorter than `v` reach `w`, so does `v`.
///
/// Backward edges are counted only when they stay inside `G_F`. Counting all
/// backward edges of `D_F` makes the statement false: for `F = {aa, abab}`
/// the state `aba` has `Δ = 2` and one backward edge, into the sink `aa`, so
/// it is a dead end although every shorter state reaches `ε`.
fn path_lemma(d: &CmrAutomaton) -> CheckResult {
    let g = d.presentation();
    let reach = reach_sets(g);
    let len = |s: StateId| g.state(s).word.as_ref().map_or(0, |w| w.len());
    let mut witness = None;
    'outer: for v in g.ids().skip(1) {
        let dv = d.presentation_ids()[v.0];
        let nb = surviving_backward_edges(d, dv);
        if nb == 0 {
            continue;
        }
        let fv = d.failure(dv).expect("defined off ε and sinks");
        let (nf_fv, _) = d.edge_counts(fv).expect("failure targets are not sinks");
        let gap = d.delta_gap(dv).expect("defined off ε and sinks");
        if !(nf_fv < nb || gap >= 2) {
            continue;
        }
        for w in g.ids() {
            let premise = g
                .ids()
                .filter(|&u| len(u) < len(v))
                .all(|u| reach[u.0].contains(&w));
            if premise && !reach[v.0].contains(&w) {
                witness = Some(format!("{} does not reach {}", g.name(v), g.name(w)));
                break 'outer;
            }
        }
    }
    CheckResult::from_witness("path_lemma", witness)
}

fn nf_corollary(d: &CmrAutomaton) -> CheckResult {
    const NAME: &str = "nf_corollary";
    let sigma = d.forbidden().alphabet().len();
    if sigma < 3 {
        return na(NAME, "alphabet has fewer than 3 symbols");
    }
    let small = d
        .presentation_ids()
        .iter()
        .all(|&v| 2 * d.edge_counts(v).expect("not a sink").0 < sigma);
    if !small {
        return na(NAME, "some state has too many forward edges");
    }
    let witness = (!is_irreducible_graph(d.presentation()))
        .then(|| "G_F is not strongly connected".to_string());
    CheckResult::from_witness(NAME, witness)
}

fn equal_length_law(d: &CmrAutomaton) -> CheckResult {
    const NAME: &str = "equal_length_law";
    if !d.forbidden().equal_lengths() {
        return na(NAME, "forbidden words differ in length");
    }
    let g = d.presentation();
    let witness = follower_partition(g).merged_blocks().find_map(|block| {
        let lens: BTreeSet<usize> = block
            .iter()
            .map(|&s| d.word(d.presentation_ids()[s.0]).len())
            .collect();
        (lens.len() > 1).then(|| {
            let names: Vec<&str> = block.iter().map(|&s| g.name(s)).collect();
            format!("equivalent states {names:?} differ in length")
        })
    });
    CheckResult::from_witness(NAME, witness)
}

fn single_word_separation(d: &CmrAutomaton) -> CheckResult {
    const NAME: &str = "single_word_separation";
    if d.forbidden().len() != 1 {
        return na(NAME, "more than one forbidden word");
    }
    let witness = (!is_follower_separated(d.presentation()))
        .then(|| "G_F has follower-equivalent states".to_string());
    CheckResult::from_witness(NAME, witness)
}

fn fork_uniqueness(d: &CmrAutomaton) -> CheckResult {
    const NAME: &str = "fork_uniqueness";
    let Ok(p) = fork_state(d.forbidden()) else {
        return na(NAME, "not two words of equal length");
    };
    let forks: Vec<StateId> = d
        .presentation_ids()
        .iter()
        .copied()
        .filter(|&v| d.edge_counts(v).expect("not a sink").0 >= 2)
        .collect();
    let witness = match forks.as_slice() {
        [v] if d.word(*v) == &p => None,
        _ => Some(format!(
            "states with two forward edges: {:?}, fork is {}",
            forks.iter().map(|&v| d.render(v)).collect::<Vec<_>>(),
            d.forbidden().render(&p)
        )),
    };
    CheckResult::from_witness(NAME, witness)
}

fn one_word_theorem(d: &CmrAutomaton, report: &CoverReport) -> CheckResult {
    const NAME: &str = "one_word_theorem";
    let f = d.forbidden();
    if f.len() != 1 {
        return na(NAME, "more than one forbidden word");
    }
    if !report.language_irreducible {
        return na(NAME, "language is reducible");
    }
    let n = f.words()[0].len();
    let witness = if report.nu != n {
        Some(format!("ν = {}, word length {n}", report.nu))
    } else {
        match graphs_isomorphic(&report.cover, d.presentation()) {
            Ok(true) => None,
            Ok(false) => Some("cover is not isomorphic to G_F".to_string()),
            Err(e) => Some(e.to_string()),
        }
    };
    CheckResult::from_witness(NAME, witness)
}

fn one_word_reducible_shapes(d: &CmrAutomaton, report: &CoverReport) -> CheckResult {
    const NAME: &str = "one_word_reducible_shapes";
    let f = d.forbidden();
    let shaped = match (f.words(), f.alphabet().len()) {
        ([w], 2) if w.len() >= 2 => {
            let (first, last) = (w[0], w[w.len() - 1]);
            first != last
                && (w[1..].iter().all(|&s| s == last)
                    || w[..w.len() - 1].iter().all(|&s| s == first))
        }
        _ => false,
    };
    if !shaped {
        return na(NAME, "not a binary word of shape ab…b or a…ab");
    }
    let witness = report
        .language_irreducible
        .then(|| "language reported irreducible".to_string());
    CheckResult::from_witness(NAME, witness)
}

fn two_word_applicable(
    d: &CmrAutomaton,
    report: &CoverReport,
) -> std::result::Result<(), &'static str> {
    let f = d.forbidden();
    if f.len() != 2 || !f.equal_lengths() {
        Err("not two words of equal length")
    } else if f.alphabet().len() < 3 {
        Err("alphabet has fewer than 3 symbols")
    } else if !report.language_irreducible {
        Err("language is reducible")
    } else {
        Ok(())
    }
}

fn two_word_irreducibility(d: &CmrAutomaton, report: &CoverReport) -> CheckResult {
    const NAME: &str = "two_word_irreducibility";
    if let Err(why) = two_word_applicable(d, report) {
        return na(NAME, why);
    }
    let witness = (!report.graph_irreducible).then(|| "G_F is not strongly connected".to_string());
    CheckResult::from_witness(NAME, witness)
}

fn nu_formula(d: &CmrAutomaton, report: &CoverReport) -> CheckResult {
    const NAME: &str = "nu_formula";
    if let Err(why) = two_word_applicable(d, report) {
        return na(NAME, why);
    }
    let Ok(z) = z_family_analysis(d.forbidden()) else {
        return na(NAME, "not of the form {aⁿ, a𝐱}");
    };
    if report.nu != z.predicted_nu {
        return CheckResult::new(
            NAME,
            Verdict::Fails(format!("ν = {}, predicted {}", report.nu, z.predicted_nu)),
        );
    }
    let g = d.presentation();
    let level_pair = |l: usize| {
        let x = g.find_word(&z.z1[..l]).expect("prefix of z₁");
        let y = g.find_word(&z.z2[..l]).expect("prefix of z₂");
        (x.min(y), x.max(y))
    };
    let first = z.merge_level.unwrap_or(z.n);
    let expected: BTreeSet<(StateId, StateId)> =
        (first.max(z.x1() + 1)..z.n).map(level_pair).collect();
    let mut actual = BTreeSet::new();
    for block in report.partition.merged_blocks() {
        match block {
            [x, y] => {
                actual.insert((*x, *y));
            }
            _ => {
                let names: Vec<&str> = block.iter().map(|&s| g.name(s)).collect();
                return CheckResult::new(
                    NAME,
                    Verdict::Fails(format!("block {names:?} is not a pair")),
                );
            }
        }
    }
    let witness = (expected != actual).then(|| {
        let show = |set: &BTreeSet<(StateId, StateId)>| {
            set.iter()
                .map(|&(x, y)| format!("{}~{}", g.name(x), g.name(y)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("merged [{}], expected [{}]", show(&actual), show(&expected))
    });
    CheckResult::from_witness(NAME, witness)
}

fn nu_bounds(d: &CmrAutomaton, report: &CoverReport) -> CheckResult {
    const NAME: &str = "nu_bounds";
    if let Err(why) = two_word_applicable(d, report) {
        return na(NAME, why);
    }
    let (lower, upper) = cover_size_bounds(d.forbidden()).expect("preconditions checked");
    let witness = (!(lower..=upper).contains(&report.nu))
        .then(|| format!("ν = {} outside [{lower}, {upper}]", report.nu));
    CheckResult::from_witness(NAME, witness)
}

fn shannon_characterization(report: &CoverReport) -> CheckResult {
    const NAME: &str = "shannon_characterization";
    if !report.language_irreducible {
        return na(NAME, "language is reducible");
    }
    let witness = if !is_irreducible_graph(&report.cover) {
        Some("cover is not strongly connected".to_string())
    } else if !is_follower_separated(&report.cover) {
        Some("cover is not follower-separated".to_string())
    } else {
        None
    };
    CheckResult::from_witness(NAME, witness)
}

fn idempotence(report: &CoverReport) -> CheckResult {
    let witness = (!follower_partition(&report.cover).is_discrete())
        .then(|| "refining the cover merges states".to_string());
    CheckResult::from_witness("idempotence", witness)
}

fn refinement_soundness(d: &CmrAutomaton) -> CheckResult {
    let g = d.presentation();
    let p = follower_partition(g);
    let witness = g.ids().find_map(|s| {
        g.ids().skip(s.0 + 1).find_map(|t| {
            let brute = oracle::brute_equivalent(g, s, t);
            (brute != p.same_block(s, t)).then(|| {
                format!(
                    "{} and {}: partition says {}, brute force says {brute}",
                    g.name(s),
                    g.name(t),
                    p.same_block(s, t)
                )
            })
        })
    });
    CheckResult::from_witness("refinement_soundness", witness)
}

fn language_equivalence(d: &CmrAutomaton, report: &CoverReport, bound: usize) -> CheckResult {
    let f = d.forbidden();
    let witness = oracle::compare_language(&report.cover, f, bound).map(|x| {
        if x.admissible {
            format!("cover misses {}", f.render(&x.word))
        } else {
            format!("cover generates forbidden {}", f.render(&x.word))
        }
    });
    CheckResult::from_witness("language_equivalence", witness)
}

fn debruijn_isomorphism(d: &CmrAutomaton, report: &CoverReport) -> CheckResult {
    const NAME: &str = "debruijn_isomorphism";
    if !report.language_irreducible {
        return na(NAME, "language is reducible");
    }
    let Ok(db) = oracle::debruijn_presentation(d.forbidden()) else {
        return na(NAME, "longest forbidden word has length 1");
    };
    let nerode = NerodeDfa::new(d);
    let reduced = reduce_presentation(&db, d, &nerode);
    let witness = if !reduced.irreducible {
        Some("no component of the reduced de Bruijn graph presents the language".to_string())
    } else {
        match graphs_isomorphic(&reduced.cover, &report.cover) {
            Ok(true) => None,
            Ok(false) => Some(format!(
                "reduced de Bruijn graph has {} states, cover has {}",
                reduced.cover.len(),
                report.nu
            )),
            Err(e) => Some(e.to_string()),
        }
    };
    CheckResult::from_witness(NAME, witness)
}

fn irreducibility_cross_check(
    d: &CmrAutomaton,
    report: &CoverReport,
    bounds: Bounds,
) -> CheckResult {
    let f = d.forbidden();
    let found = oracle::irreducibility_witness(f, bounds.irreducibility, bounds.connector);
    let witness = match (&found, report.language_irreducible) {
        (None, false) => Some(format!(
            "reported reducible, but every pair connects within L = {}, B = {}",
            bounds.irreducibility, bounds.connector
        )),
        (Some((u, w)), true) => Some(format!(
            "reported irreducible, but u = {}, w = {} do not connect",
            f.render(u),
            f.render(w)
        )),
        _ => None,
    };
    CheckResult::from_witness("irreducibility_cross_check", witness)
}

/// Whether every applicable check holds.
pub fn all_hold(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.holds() != Some(false))
}

/// Runs [`check`] and fails on the first error building the cover.
pub fn check_strict(f: &ForbiddenSet, bounds: Option<Bounds>) -> Result<Vec<CheckResult>> {
    shannon_cover(f)?;
    Ok(check(f, bounds))
}
