//! Named reproduction checks.
//!
//! Each check renders the expected and the measured outcome as a canonical
//! `key=value` string; a check passes iff the two strings are equal. A check
//! that hits a search cap is reported as inconclusive rather than failed.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::automaton::{Dfa, StateSet, Word};
use crate::error::{Error, Result};
use crate::families::{
    binomial, cerny, fig2_example, fig5_p4, fig5_set, p2n, p2n_pair_distance, p3n, try_bv_counterexample,
    BV_LETTER_SIGNATURES, DEFAULT_LETTER_CAP,
};
use crate::power::{
    is_completely_reachable, pair_distance, power_bfs, shortest_reaching_word, shortest_synchronizing_word,
    shortest_word_into, DEFAULT_FRONTIER_CAP,
};
use crate::random::{random_corank_dfa, random_dfa, random_digraph};
use crate::rank::{
    compose_check, digraph_strongly_connected, gamma1, gamma1_from_closure, high_rank_closure, is_strongly_connected,
    signature_of, Composition, Transformation, DEFAULT_CLOSURE_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    /// Check family, as accepted by `--only`.
    pub name: String,
    /// Instance parameter, e.g. `n=7`; empty when the check has none.
    pub param: String,
    /// The claim being checked.
    pub citation: String,
    pub expected: String,
    pub measured: String,
    pub status: Status,
    pub runtime_ms: u64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn label(&self) -> String {
        if self.param.is_empty() {
            self.name.clone()
        } else {
            format!("{}[{}]", self.name, self.param)
        }
    }
}

/// Names of all checks, in report order.
pub const CHECK_NAMES: [&str; 7] = ["cerny", "fig2", "fig5", "prop1", "prop2", "prop4", "random"];

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Restricts the run to these check names; `None` runs everything.
    pub only: Option<Vec<String>>,
    pub seed: u64,
    pub trials: usize,
    pub frontier_cap: usize,
    pub closure_cap: usize,
    pub prop1_ns: Vec<usize>,
    pub prop2_ns: Vec<usize>,
    pub cerny_ns: Vec<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            only: None,
            seed: 42,
            trials: 200,
            frontier_cap: DEFAULT_FRONTIER_CAP,
            closure_cap: DEFAULT_CLOSURE_CAP,
            prop1_ns: vec![7, 11],
            prop2_ns: vec![5, 6, 7],
            cerny_ns: vec![2, 4, 6, 8],
        }
    }
}

impl VerifyConfig {
    fn selected(&self, name: &str) -> bool {
        self.only.as_ref().is_none_or(|names| names.iter().any(|n| n == name))
    }
}

fn timed<F>(name: &str, param: String, citation: &str, expected: String, f: F) -> CheckResult
where
    F: FnOnce() -> Result<String>,
{
    let start = Instant::now();
    let outcome = f();
    let runtime_ms = start.elapsed().as_millis() as u64;
    let (measured, status) = match outcome {
        Ok(m) => {
            let status = if m == expected { Status::Pass } else { Status::Fail };
            (m, status)
        }
        Err(e @ Error::CapExceeded { .. }) => (format!("error: {e}"), Status::Inconclusive),
        Err(e) => (format!("error: {e}"), Status::Fail),
    };
    CheckResult {
        name: name.to_string(),
        param,
        citation: citation.to_string(),
        expected,
        measured,
        status,
        runtime_ms,
    }
}

/// `P2,n`: the shortest word reaching `Q ∖ {q_{k+2}, q_{k+4}}` has length
/// `n²/4 + 5n/4 - 6` and starts with `c`.
pub fn check_prop1(n: usize, cap: usize) -> CheckResult {
    let pair = p2n_pair_distance(n);
    let expected = format!("pair_distance={} len={} first=c", pair, pair + 1);
    timed(
        "prop1",
        format!("n={n}"),
        "P2,n: shortest word reaching Q minus {q_(k+2), q_(k+4)} has length n^2/4 + 5n/4 - 6",
        expected,
        || {
            let dfa = p2n(n)?;
            let k = (n - 5) / 2;
            let from = StateSet::from_states(n, [2, 4])?;
            let to = StateSet::from_states(n, [k + 2, k + 4])?;
            let pd = pair_distance(&dfa, &[0, 1], from, to)?;
            let index = power_bfs(&dfa, dfa.states(), cap)?;
            let target = to.complement(n);
            let w = shortest_reaching_word(&index, target);
            Ok(format!(
                "pair_distance={} len={} first={}",
                opt(pd),
                opt(w.as_ref().map(Word::len)),
                w.as_ref()
                    .and_then(|w| w.letters().first())
                    .map_or("none", |&l| dfa.letter_name(l))
            ))
        },
    )
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

/// `P3,n`: the shortest word reaching `S_L` is `a l1 ... l_{L-1}`, of length `C(n-1, ⌊n/2⌋)`.
pub fn check_prop2(n: usize, cap: usize) -> CheckResult {
    let total = binomial(n - 1, n / 2).unwrap_or(0);
    let expected = format!("len={total} suffix=a l1..l{}", total.saturating_sub(1));
    timed(
        "prop2",
        format!("n={n}"),
        "P3,n: shortest word reaching S_L has length C(n-1, floor(n/2)) and suffix a l1 ... l(L-1)",
        expected,
        || {
            let dfa = p3n(n, DEFAULT_LETTER_CAP)?;
            let m = n / 2;
            let target = StateSet::from_states(n, n - m + 1..=n)?;
            let index = power_bfs(&dfa, dfa.states(), cap)?;
            let Some(w) = shortest_reaching_word(&index, target) else {
                return Ok("len=none suffix=none".to_string());
            };
            let suffix_start = w.letters().iter().rposition(|&l| l == 0);
            let suffix = match suffix_start {
                Some(i) => {
                    let tail = &w.letters()[i + 1..];
                    if tail.iter().enumerate().all(|(j, &l)| l == j + 1) {
                        format!("a l1..l{}", tail.len())
                    } else {
                        dfa.format_word(&Word::new(w.letters()[i..].to_vec()))
                    }
                }
                None => "none".to_string(),
            };
            Ok(format!("len={} suffix={suffix}", w.len()))
        },
    )
}

/// Power automaton of the four-state automaton as drawn, in figure labels.
/// The drawing sends `03` to `13` under both letters.
const FIG6_EDGES: [(&str, &str, &str); 30] = [
    ("0", "a", "1"),
    ("0", "b", "0"),
    ("1", "a", "0"),
    ("1", "b", "2"),
    ("2", "a", "2"),
    ("2", "b", "3"),
    ("3", "a", "0"),
    ("3", "b", "1"),
    ("13", "a", "0"),
    ("13", "b", "12"),
    ("23", "a", "02"),
    ("23", "b", "13"),
    ("12", "a", "02"),
    ("12", "b", "23"),
    ("03", "a", "13"),
    ("03", "b", "13"),
    ("02", "a", "12"),
    ("02", "b", "03"),
    ("01", "a", "01"),
    ("01", "b", "02"),
    ("013", "a", "01"),
    ("013", "b", "012"),
    ("023", "a", "012"),
    ("023", "b", "013"),
    ("012", "a", "012"),
    ("012", "b", "023"),
    ("0123", "a", "012"),
    ("0123", "b", "0123"),
    ("123", "a", "02"),
    ("123", "b", "123"),
];

fn fig6_label_set(label: &str) -> StateSet {
    let labels: Vec<usize> = label.bytes().map(|b| (b - b'0') as usize).collect();
    fig5_set(&labels)
}

/// Nodes reachable from `0123` along [`FIG6_EDGES`].
pub fn fig6_reachable_count() -> usize {
    let mut seen = HashSet::from(["0123"]);
    let mut stack = vec!["0123"];
    while let Some(u) = stack.pop() {
        for &(from, _, to) in &FIG6_EDGES {
            if from == u && seen.insert(to) {
                stack.push(to);
            }
        }
    }
    seen.len()
}

/// Figure edges that disagree with the automaton's transitions.
pub fn fig6_mismatches() -> Vec<(&'static str, &'static str, &'static str)> {
    let dfa = fig5_p4();
    FIG6_EDGES
        .iter()
        .copied()
        .filter(|&(from, letter, to)| {
            let l = dfa.letter_index(letter).unwrap();
            dfa.apply_letter(fig6_label_set(from), l) != fig6_label_set(to)
        })
        .collect()
}

/// No word shorter than 6 maps `Q` into `{1,2,3}` or into any of its subsets.
pub fn check_fig5(cap: usize) -> CheckResult {
    let expected = format!("into_len=6 subsets_min=6 reachable={}", fig6_reachable_count());
    timed(
        "fig5",
        String::new(),
        "P4 (4 states): no word shorter than 6 maps Q into {1,2,3} or any of its subsets",
        expected,
        || {
            let dfa = fig5_p4();
            let target = fig5_set(&[1, 2, 3]);
            let w = shortest_word_into(&dfa, target, cap)?;
            let mut subsets_min: Option<usize> = None;
            for bits in 1..=target.bits() {
                let s = StateSet::from_bits(bits);
                if !s.is_subset(target) {
                    continue;
                }
                if let Some(w) = shortest_word_into(&dfa, s, cap)? {
                    subsets_min = Some(subsets_min.map_or(w.len(), |m| m.min(w.len())));
                }
            }
            let index = power_bfs(&dfa, dfa.states(), cap)?;
            Ok(format!(
                "into_len={} subsets_min={} reachable={}",
                opt(w.map(|w| w.len())),
                opt(subsets_min),
                index.len()
            ))
        },
    )
}

/// The six-state automaton is completely reachable but its Γ₁ is not strongly connected.
pub fn check_prop4(frontier_cap: usize, closure_cap: usize) -> CheckResult {
    timed(
        "prop4",
        String::new(),
        "P4 (6 states): completely reachable, Gamma1 not strongly connected, no edge into state 1",
        "cr=true scc=false indeg1=0 signatures=match".to_string(),
        || {
            let dfa = try_bv_counterexample()?;
            let cr = is_completely_reachable(&dfa, frontier_cap)?;
            let g = gamma1(&dfa, closure_cap)?;
            let mut signatures = "match".to_string();
            for (l, &(excl, dupl, root)) in BV_LETTER_SIGNATURES.iter().enumerate() {
                let sig = signature_of(&Transformation::letter(&dfa, l)?)?;
                if (sig.excl, sig.dupl, sig.root.to_vec()) != (excl, dupl, root.to_vec()) {
                    signatures = format!("mismatch@{}", dfa.letter_name(l));
                    break;
                }
            }
            Ok(format!(
                "cr={} scc={} indeg1={} signatures={signatures}",
                cr.complete,
                is_strongly_connected(&g),
                g.in_degree(1)
            ))
        },
    )
}

const FIG2_EDGES: [(usize, usize); 5] = [(1, 2), (1, 3), (2, 3), (2, 1), (3, 2)];

/// Γ₁ of the three-state example is strongly connected and contains the drawn edges.
pub fn check_fig2(closure_cap: usize) -> CheckResult {
    timed(
        "fig2",
        String::new(),
        "Gamma1 of the 3-state completely reachable example is strongly connected and contains its drawn edges",
        "scc=true drawn_edges=5/5 edges=6".to_string(),
        || {
            let dfa = fig2_example();
            let g = gamma1(&dfa, closure_cap)?;
            let present = FIG2_EDGES.iter().filter(|&&(u, v)| g.has_edge(u, v)).count();
            Ok(format!(
                "scc={} drawn_edges={present}/5 edges={}",
                is_strongly_connected(&g),
                g.edges().len()
            ))
        },
    )
}

/// The Černý automaton `C_n` has a shortest synchronizing word of length `(n-1)²`.
pub fn check_cerny(n: usize, cap: usize) -> CheckResult {
    timed(
        "cerny",
        format!("n={n}"),
        "Cerny automaton C_n: shortest synchronizing word has length (n-1)^2",
        format!("len={}", (n - 1) * (n - 1)),
        || {
            let dfa = cerny(n)?;
            let w = shortest_synchronizing_word(&dfa, cap)?;
            Ok(format!("len={}", opt(w.map(|w| w.len()))))
        },
    )
}

/// Tallies of [`random_property_counts`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RandomPropertyCounts {
    pub key_pairs: usize,
    pub key_mismatches: usize,
    pub corank_sets: usize,
    pub corank_violations: usize,
    pub digraphs: usize,
    pub scc_mismatches: usize,
    pub gamma1_scc: usize,
    pub scc_not_cr: usize,
    pub bfs_automata: usize,
    pub bfs_mismatches: usize,
}

/// Pairs sampled per trial for the composition rule.
pub const KEY_PAIRS_PER_TRIAL: usize = 50;
const MAX_ENUMERATED_LENGTH: usize = 16;

/// Strong connectivity as "every non-empty proper subset has an incoming edge".
pub fn subset_formulation_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let full = StateSet::full(n);
    (1..full.bits()).all(|bits| {
        let s = StateSet::from_bits(bits);
        edges.iter().any(|&(u, v)| !s.contains(u) && s.contains(v))
    })
}

/// Minimum word length reaching each image of `Q`, by enumerating every word
/// of length at most `max_len` depth first.
pub fn enumerate_word_minima(dfa: &Dfa, max_len: usize) -> HashMap<StateSet, usize> {
    fn go(dfa: &Dfa, s: StateSet, depth: usize, max_len: usize, best: &mut HashMap<StateSet, usize>) {
        let e = best.entry(s).or_insert(depth);
        if depth < *e {
            *e = depth;
        }
        if depth == max_len {
            return;
        }
        for l in 0..dfa.num_letters() {
            go(dfa, dfa.apply_letter(s, l), depth + 1, max_len, best);
        }
    }
    let mut best = HashMap::new();
    go(dfa, dfa.states(), 0, max_len, &mut best);
    best
}

/// Runs the randomized property checks for `trials` rounds.
pub fn random_property_counts(
    seed: u64,
    trials: usize,
    frontier_cap: usize,
    closure_cap: usize,
) -> Result<RandomPropertyCounts> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = RandomPropertyCounts::default();
    for _ in 0..trials {
        let n = rng.gen_range(3..=6);
        let k = rng.gen_range(2..=3);
        let dfa = random_corank_dfa(&mut rng, n, k);

        // composition rule against direct composition
        let closure = high_rank_closure(&dfa, closure_cap)?;
        let corank: Vec<Transformation> = closure.corank_one().collect();
        for _ in 0..KEY_PAIRS_PER_TRIAL {
            let t1 = &corank[rng.gen_range(0..corank.len())];
            let t2 = &corank[rng.gen_range(0..corank.len())];
            let direct = t1.then(t2);
            let ok = match compose_check(t1, t2)? {
                Composition::RankDropped => direct.rank() + 2 == n,
                Composition::Signature(sig) => match signature_of(&direct) {
                    Ok(d) => (d.excl, d.dupl, d.root) == (sig.excl, sig.dupl, sig.root),
                    Err(_) => false,
                },
            };
            c.key_pairs += 1;
            if !ok {
                c.key_mismatches += 1;
            }
        }

        // reachable sets of size n-1 are reached within n letters
        let index = power_bfs(&dfa, dfa.states(), frontier_cap)?;
        for (s, d) in index.iter() {
            if s.len() + 1 == n {
                c.corank_sets += 1;
                if d > n {
                    c.corank_violations += 1;
                }
            }
        }

        // strongly connected Γ₁ implies complete reachability
        let g = gamma1_from_closure(&closure);
        if is_strongly_connected(&g) {
            c.gamma1_scc += 1;
            if !is_completely_reachable(&dfa, frontier_cap)?.complete {
                c.scc_not_cr += 1;
            }
        }

        // graph connectivity against the subset formulation
        let gn = rng.gen_range(1..=12);
        let p = rng.gen_range(0.05..0.45);
        let edges = random_digraph(&mut rng, gn, p);
        c.digraphs += 1;
        if digraph_strongly_connected(gn, &edges) != subset_formulation_connected(gn, &edges) {
            c.scc_mismatches += 1;
        }

        // BFS distances against word enumeration
        let (small, index) = loop {
            let n = rng.gen_range(2..=5);
            let d = random_dfa(&mut rng, n, 2);
            let index = power_bfs(&d, d.states(), frontier_cap)?;
            if index.max_dist() <= MAX_ENUMERATED_LENGTH {
                break (d, index);
            }
        };
        let minima = enumerate_word_minima(&small, index.max_dist());
        let agree = minima.len() == index.len() && index.iter().all(|(s, d)| minima.get(&s) == Some(&d));
        c.bfs_automata += 1;
        if !agree {
            c.bfs_mismatches += 1;
        }
    }
    Ok(c)
}

fn render_counts(c: &RandomPropertyCounts) -> String {
    format!(
        "key_pairs={} key_mismatches={} corank_violations={} digraphs={} scc_mismatches={} scc_not_cr={} bfs_automata={} bfs_mismatches={}",
        c.key_pairs,
        c.key_mismatches,
        c.corank_violations,
        c.digraphs,
        c.scc_mismatches,
        c.scc_not_cr,
        c.bfs_automata,
        c.bfs_mismatches
    )
}

/// Randomized checks of the composition rule, the `n - 1` size bound, the
/// subset formulation of strong connectivity, the sufficiency of a strongly
/// connected Γ₁ and BFS exactness.
pub fn check_random_properties(seed: u64, trials: usize, frontier_cap: usize, closure_cap: usize) -> CheckResult {
    let expected = render_counts(&RandomPropertyCounts {
        key_pairs: trials * KEY_PAIRS_PER_TRIAL,
        digraphs: trials,
        bfs_automata: trials,
        ..Default::default()
    });
    timed(
        "random",
        format!("seed={seed},trials={trials}"),
        "composition rule of rank n-1 words, size n-1 sets within n letters, subset formulation of strong connectivity, strongly connected Gamma1 implies complete reachability, BFS exactness",
        expected,
        || random_property_counts(seed, trials, frontier_cap, closure_cap).map(|c| render_counts(&c)),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn get<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a CheckResult> + 'a {
        self.results.iter().filter(move |r| r.name == name)
    }

    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    /// Tab-separated table. Runtimes are included only when `timings` is set,
    /// so that repeated runs produce identical output.
    pub fn to_text(&self, timings: bool) -> String {
        let mut out = String::from("check\tstatus\texpected\tmeasured");
        if timings {
            out.push_str("\tms");
        }
        out.push('\n');
        for r in &self.results {
            let _ = write!(
                out,
                "{}\t{}\t{}\t{}",
                r.label(),
                r.status.as_str(),
                r.expected,
                r.measured
            );
            if timings {
                let _ = write!(out, "\t{}", r.runtime_ms);
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "# {} passed, {} failed, {} inconclusive",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive)
        );
        out
    }

    pub fn to_json(&self, timings: bool) -> serde_json::Value {
        let results: Vec<serde_json::Value> = self
            .results
            .iter()
            .map(|r| {
                let mut v = serde_json::json!({
                    "name": r.name,
                    "param": r.param,
                    "citation": r.citation,
                    "expected": r.expected,
                    "measured": r.measured,
                    "status": r.status,
                });
                if timings {
                    v["runtime_ms"] = r.runtime_ms.into();
                }
                v
            })
            .collect();
        serde_json::json!({
            "passed": self.count(Status::Pass),
            "failed": self.count(Status::Fail),
            "inconclusive": self.count(Status::Inconclusive),
            "results": results,
        })
    }
}

/// Runs every selected check with the configured instances, in canonical order.
pub fn run_all(config: &VerifyConfig) -> Report {
    let mut results = Vec::new();
    for name in CHECK_NAMES {
        if !config.selected(name) {
            continue;
        }
        match name {
            "cerny" => results.extend(config.cerny_ns.iter().map(|&n| check_cerny(n, config.frontier_cap))),
            "fig2" => results.push(check_fig2(config.closure_cap)),
            "fig5" => results.push(check_fig5(config.frontier_cap)),
            "prop1" => results.extend(config.prop1_ns.iter().map(|&n| check_prop1(n, config.frontier_cap))),
            "prop2" => results.extend(config.prop2_ns.iter().map(|&n| check_prop2(n, config.frontier_cap))),
            "prop4" => results.push(check_prop4(config.frontier_cap, config.closure_cap)),
            "random" => results.push(check_random_properties(
                config.seed,
                config.trials,
                config.frontier_cap,
                config.closure_cap,
            )),
            _ => unreachable!(),
        }
    }
    Report { results }
}
