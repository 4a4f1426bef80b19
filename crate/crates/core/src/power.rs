//! Breadth-first search over the power automaton.
//!
//! Letters are expanded in alphabet order and each subset keeps the first
//! predecessor that discovered it. Discovery order is therefore (distance,
//! lexicographic order of the extracted word), which makes every extracted
//! word the lexicographically least among the shortest ones.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::automaton::{Dfa, StateSet, Word};
use crate::error::{Error, Result};

/// Default bound on the number of visited subsets.
pub const DEFAULT_FRONTIER_CAP: usize = 1 << 25;

/// Shortest distances and BFS predecessors from a source subset.
#[derive(Clone, Debug)]
pub struct ReachabilityIndex {
    source: StateSet,
    order: Vec<StateSet>,
    dist: Vec<u32>,
    // (position of the parent in `order`, letter)
    pred: Vec<Option<(u32, u32)>>,
    position: HashMap<StateSet, u32>,
}

impl ReachabilityIndex {
    fn new(source: StateSet) -> Self {
        let mut position = HashMap::new();
        position.insert(source, 0);
        ReachabilityIndex {
            source,
            order: vec![source],
            dist: vec![0],
            pred: vec![None],
            position,
        }
    }

    fn discover(&mut self, s: StateSet, parent: u32, letter: usize) -> bool {
        if self.position.contains_key(&s) {
            return false;
        }
        self.position.insert(s, self.order.len() as u32);
        self.order.push(s);
        self.dist.push(self.dist[parent as usize] + 1);
        self.pred.push(Some((parent, letter as u32)));
        true
    }

    pub fn source(&self) -> StateSet {
        self.source
    }

    /// Number of subsets reached, including the source.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn contains(&self, s: StateSet) -> bool {
        self.position.contains_key(&s)
    }

    pub fn dist(&self, s: StateSet) -> Option<usize> {
        self.position.get(&s).map(|&i| self.dist[i as usize] as usize)
    }

    /// The recorded BFS predecessor of `s` and the letter leading from it.
    pub fn pred(&self, s: StateSet) -> Option<(StateSet, usize)> {
        let i = *self.position.get(&s)?;
        self.pred[i as usize].map(|(p, l)| (self.order[p as usize], l as usize))
    }

    /// Reached subsets with their distances, in discovery order.
    pub fn iter(&self) -> impl Iterator<Item = (StateSet, usize)> + '_ {
        self.order.iter().zip(&self.dist).map(|(&s, &d)| (s, d as usize))
    }

    pub fn max_dist(&self) -> usize {
        self.dist.iter().copied().max().unwrap_or(0) as usize
    }

    /// Follows predecessors back to the source.
    pub fn word_to(&self, target: StateSet) -> Option<Word> {
        let mut i = *self.position.get(&target)? as usize;
        let mut letters = Vec::with_capacity(self.dist[i] as usize);
        while let Some((p, l)) = self.pred[i] {
            letters.push(l as usize);
            i = p as usize;
        }
        letters.reverse();
        Some(Word::new(letters))
    }
}

/// Runs the BFS until `stop` accepts a discovered subset (returned) or the
/// reachable part is exhausted.
fn bfs_until<F>(dfa: &Dfa, source: StateSet, cap: usize, mut stop: F) -> Result<(ReachabilityIndex, Option<StateSet>)>
where
    F: FnMut(StateSet) -> bool,
{
    if source.is_empty() {
        return Err(Error::InvalidStateSet("the source set is empty".into()));
    }
    if !source.is_subset(dfa.states()) {
        return Err(Error::InvalidStateSet(format!(
            "{source} is not a set of states of the automaton"
        )));
    }
    let mut index = ReachabilityIndex::new(source);
    if stop(source) {
        return Ok((index, Some(source)));
    }
    let mut queue = VecDeque::from([0u32]);
    while let Some(i) = queue.pop_front() {
        let s = index.order[i as usize];
        for letter in 0..dfa.num_letters() {
            let next = dfa.apply_letter(s, letter);
            if index.discover(next, i, letter) {
                if index.len() > cap {
                    return Err(Error::CapExceeded { cap, what: "subsets" });
                }
                if stop(next) {
                    return Ok((index, Some(next)));
                }
                queue.push_back(index.len() as u32 - 1);
            }
        }
    }
    Ok((index, None))
}

/// Exhaustive BFS of the power automaton from `source`.
pub fn power_bfs(dfa: &Dfa, source: StateSet, frontier_cap: usize) -> Result<ReachabilityIndex> {
    bfs_until(dfa, source, frontier_cap, |_| false).map(|(index, _)| index)
}

/// Shortest (then lexicographically least) word mapping the index's source onto `target`.
pub fn shortest_reaching_word(index: &ReachabilityIndex, target: StateSet) -> Option<Word> {
    index.word_to(target)
}

/// Shortest word `w` with `Qw ⊆ target`, ties broken lexicographically.
pub fn shortest_word_into(dfa: &Dfa, target: StateSet, cap: usize) -> Result<Option<Word>> {
    if target.is_empty() {
        return Err(Error::InvalidStateSet("the target set is empty".into()));
    }
    let (index, hit) = bfs_until(dfa, dfa.states(), cap, |s| s.is_subset(target))?;
    Ok(hit.and_then(|s| index.word_to(s)))
}

/// Shortest synchronizing word, or `None` when the automaton does not synchronize.
pub fn shortest_synchronizing_word(dfa: &Dfa, cap: usize) -> Result<Option<Word>> {
    let (index, hit) = bfs_until(dfa, dfa.states(), cap, |s| s.len() == 1)?;
    Ok(hit.and_then(|s| index.word_to(s)))
}

/// Outcome of the complete-reachability test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteReachability {
    pub complete: bool,
    /// The smallest (by bit pattern) non-empty proper subset that is not reachable.
    pub missing: Option<StateSet>,
    /// Number of subsets reachable from `Q`, including `Q`.
    pub reachable: usize,
}

/// Whether every non-empty proper subset of `Q` is reachable.
pub fn is_completely_reachable(dfa: &Dfa, cap: usize) -> Result<CompleteReachability> {
    let n = dfa.n();
    if n >= 63 || (1usize << n) - 1 > cap {
        return Err(Error::CapExceeded { cap, what: "subsets" });
    }
    let index = power_bfs(dfa, dfa.states(), cap)?;
    let full = dfa.states().bits();
    let missing = (1..full).map(StateSet::from_bits).find(|&s| !index.contains(s));
    Ok(CompleteReachability {
        complete: missing.is_none(),
        missing,
        reachable: index.len(),
    })
}

/// Distances in the square graph restricted to a subset of the letters.
#[derive(Clone, Debug)]
pub struct PairIndex {
    letters: Vec<usize>,
    source: StateSet,
    dist: HashMap<StateSet, usize>,
}

impl PairIndex {
    /// BFS over unordered pairs from `source`; a letter that merges a pair
    /// contributes no edge.
    pub fn build(dfa: &Dfa, letters: &[usize], source: StateSet) -> Result<Self> {
        check_pair(dfa, source)?;
        for &l in letters {
            if l >= dfa.num_letters() {
                return Err(Error::InvalidWord {
                    index: l,
                    alphabet: dfa.num_letters(),
                });
            }
        }
        let mut dist = HashMap::from([(source, 0usize)]);
        let mut queue = VecDeque::from([source]);
        while let Some(p) = queue.pop_front() {
            let d = dist[&p];
            for &l in letters {
                let next = dfa.apply_letter(p, l);
                if next.len() == 2 && !dist.contains_key(&next) {
                    dist.insert(next, d + 1);
                    queue.push_back(next);
                }
            }
        }
        Ok(PairIndex {
            letters: letters.to_vec(),
            source,
            dist,
        })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn source(&self) -> StateSet {
        self.source
    }

    pub fn dist(&self, pair: StateSet) -> Option<usize> {
        self.dist.get(&pair).copied()
    }

    /// Largest finite distance from the source.
    pub fn eccentricity(&self) -> usize {
        self.dist.values().copied().max().unwrap_or(0)
    }
}

fn check_pair(dfa: &Dfa, p: StateSet) -> Result<()> {
    if p.len() != 2 || !p.is_subset(dfa.states()) {
        return Err(Error::InvalidStateSet(format!("{p} is not a pair of distinct states")));
    }
    Ok(())
}

/// Distance between two unordered pairs in the square graph over `letters`.
pub fn pair_distance(dfa: &Dfa, letters: &[usize], from: StateSet, to: StateSet) -> Result<Option<usize>> {
    check_pair(dfa, to)?;
    Ok(PairIndex::build(dfa, letters, from)?.dist(to))
}

/// One subset's line in a [`DonReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub subset: Vec<usize>,
    pub size: usize,
    pub dist: usize,
    pub bound: usize,
    pub violated: bool,
}

impl AuditEntry {
    fn new(n: usize, s: StateSet, dist: usize) -> Self {
        let bound = n * (n - s.len());
        AuditEntry {
            subset: s.to_vec(),
            size: s.len(),
            dist,
            bound,
            violated: dist > bound,
        }
    }

    pub fn excess(&self) -> isize {
        self.dist as isize - self.bound as isize
    }
}

/// Comparison of shortest-word lengths against the `n(n - k)` bound.
#[derive(Clone, Debug, Serialize)]
pub struct DonReport {
    pub n: usize,
    /// Every reachable non-empty proper subset with its exact distance.
    pub reachable: Vec<AuditEntry>,
    /// Every non-empty proper subset `S` that contains a reachable set, with
    /// the length of the shortest `w` such that `Qw ⊆ S`. `None` when `2^n`
    /// is too large to enumerate.
    pub included: Option<Vec<AuditEntry>>,
}

/// Largest automaton for which the included-subset variant is enumerated.
pub const MAX_INCLUDED_AUDIT_STATES: usize = 20;

impl DonReport {
    /// Violations of either variant, largest excess first.
    pub fn violations(&self, included: bool) -> Vec<&AuditEntry> {
        let entries: &[AuditEntry] = if included {
            self.included.as_deref().unwrap_or(&[])
        } else {
            &self.reachable
        };
        let mut v: Vec<&AuditEntry> = entries.iter().filter(|e| e.violated).collect();
        v.sort_by(|a, b| {
            b.excess()
                .cmp(&a.excess())
                .then(a.size.cmp(&b.size))
                .then_with(|| a.subset.cmp(&b.subset))
        });
        v
    }
}

/// Audits every reachable proper subset (exact reach) and, when `n` is small
/// enough, every subset for the reach-into variant.
pub fn don_audit(dfa: &Dfa, cap: usize) -> Result<DonReport> {
    let n = dfa.n();
    let index = power_bfs(dfa, dfa.states(), cap)?;
    let q = dfa.states();
    let mut reachable: Vec<AuditEntry> = index
        .iter()
        .filter(|&(s, _)| s != q)
        .map(|(s, d)| AuditEntry::new(n, s, d))
        .collect();
    reachable.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| a.subset.cmp(&b.subset)));

    let included = if n <= MAX_INCLUDED_AUDIT_STATES && (1usize << n) <= cap.max(1 << 10) {
        // best[S] = min over reachable R ⊆ S of dist[R], by a subset-minimum sweep
        let size = 1usize << n;
        let mut best = vec![u32::MAX; size];
        for (s, d) in index.iter() {
            best[s.bits() as usize] = d as u32;
        }
        for bit in 0..n {
            let b = 1usize << bit;
            for s in 0..size {
                if s & b != 0 {
                    let sub = best[s ^ b];
                    if sub < best[s] {
                        best[s] = sub;
                    }
                }
            }
        }
        let mut entries: Vec<AuditEntry> = (1..size - 1)
            .filter(|&s| best[s] != u32::MAX)
            .map(|s| AuditEntry::new(n, StateSet::from_bits(s as u64), best[s] as usize))
            .collect();
        entries.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| a.subset.cmp(&b.subset)));
        Some(entries)
    } else {
        None
    };
    Ok(DonReport { n, reachable, included })
}

/// Images of the source under each prefix of the extracted shortest word,
/// recomputed by applying the word letter by letter.
pub fn prefix_images(dfa: &Dfa, index: &ReachabilityIndex, target: StateSet) -> Option<Vec<StateSet>> {
    let w = index.word_to(target)?;
    let mut images = Vec::with_capacity(w.len() + 1);
    let mut cur = index.source();
    images.push(cur);
    for &l in w.letters() {
        cur = dfa.apply_letter(cur, l);
        images.push(cur);
    }
    Some(images)
}

/// Checks that along the extracted shortest word to `target` all prefix
/// images are distinct and none is smaller than `target`. Always true for a
/// correct index; `false` indicates a bug.
pub fn check_shortest_word_lemma(dfa: &Dfa, index: &ReachabilityIndex, target: StateSet) -> Result<bool> {
    let images = prefix_images(dfa, index, target).ok_or(Error::Unreachable(target))?;
    if *images.last().unwrap() != target {
        return Ok(false);
    }
    let mut seen = std::collections::HashSet::new();
    Ok(images.iter().all(|s| s.len() >= target.len() && seen.insert(*s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{bv_counterexample, cerny, fig2_example, fig5_p4, fig5_set, p2n, p3n};

    const CAP: usize = DEFAULT_FRONTIER_CAP;

    fn set(n: usize, states: &[usize]) -> StateSet {
        StateSet::from_states(n, states.iter().copied()).unwrap()
    }

    /// Minimum length over all words of length <= max_len mapping `Q` onto
    /// (or into, when `into`) the target, by plain enumeration.
    fn brute_min(dfa: &Dfa, target: StateSet, into: bool, max_len: usize) -> Option<usize> {
        let k = dfa.num_letters();
        for len in 0..=max_len {
            for code in 0..k.pow(len as u32) {
                let mut c = code;
                let mut letters = Vec::with_capacity(len);
                for _ in 0..len {
                    letters.push(c % k);
                    c /= k;
                }
                let img = dfa.apply(dfa.states(), &Word::new(letters)).unwrap();
                if img == target || (into && img.is_subset(target)) {
                    return Some(len);
                }
            }
        }
        None
    }

    #[test]
    fn cerny4_sync_distance() {
        let c4 = cerny(4).unwrap();
        let index = power_bfs(&c4, c4.states(), CAP).unwrap();
        assert_eq!(index.dist(set(4, &[1])), Some(9));
        assert_eq!(index.dist(c4.states()), Some(0));
        assert_eq!(brute_min(&c4, set(4, &[1]), false, 9), Some(9));
    }

    #[test]
    fn fig2_single_state_distances_match_enumeration() {
        let d = fig2_example();
        let index = power_bfs(&d, d.states(), CAP).unwrap();
        for q in 1..=3 {
            let s = set(3, &[q]);
            assert_eq!(index.dist(s), brute_min(&d, s, false, 4), "{s}");
        }
    }

    #[test]
    fn reaching_word_trivial_and_p3() {
        let c4 = cerny(4).unwrap();
        let index = power_bfs(&c4, c4.states(), CAP).unwrap();
        assert_eq!(shortest_reaching_word(&index, c4.states()), Some(Word::empty()));

        let p = p3n(5, 1000).unwrap();
        let index = power_bfs(&p, p.states(), CAP).unwrap();
        let w = shortest_reaching_word(&index, set(5, &[4, 5])).unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(p.apply(p.states(), &w).unwrap(), set(5, &[4, 5]));
    }

    #[test]
    fn fig5_exact_target_is_unreachable() {
        let d = fig5_p4();
        let index = power_bfs(&d, d.states(), CAP).unwrap();
        assert_eq!(shortest_reaching_word(&index, fig5_set(&[1, 2, 3])), None);
        assert_eq!(index.len(), 14);
    }

    #[test]
    fn into_fig5_is_six() {
        let d = fig5_p4();
        let target = fig5_set(&[1, 2, 3]);
        let w = shortest_word_into(&d, target, CAP).unwrap().unwrap();
        assert_eq!(w.len(), 6);
        assert!(d.apply(d.states(), &w).unwrap().is_subset(target));
        assert_eq!(brute_min(&d, target, true, 8), Some(6));
    }

    #[test]
    fn into_full_set_is_empty_word() {
        let d = fig2_example();
        assert_eq!(shortest_word_into(&d, d.states(), CAP).unwrap(), Some(Word::empty()));
        assert!(shortest_word_into(&d, StateSet::EMPTY, CAP).is_err());
    }

    #[test]
    fn into_fig2_single_state_matches_enumeration() {
        let d = fig2_example();
        let s = set(3, &[3]);
        let w = shortest_word_into(&d, s, CAP).unwrap().unwrap();
        assert_eq!(Some(w.len()), brute_min(&d, s, true, 4));
    }

    #[test]
    fn sync_words() {
        let c4 = cerny(4).unwrap();
        let w = shortest_synchronizing_word(&c4, CAP).unwrap().unwrap();
        assert_eq!(w.len(), 9);
        assert_eq!(c4.rank(&w).unwrap(), 1);
        // lexicographically least among shortest
        assert_eq!(c4.format_word(&w), "abbbabbba");

        let one = Dfa::parse("states: 1\nletters: a\na: 1\n").unwrap();
        assert_eq!(shortest_synchronizing_word(&one, CAP).unwrap(), Some(Word::empty()));

        let bv = bv_counterexample();
        let w = shortest_synchronizing_word(&bv, CAP).unwrap().unwrap();
        assert_eq!(bv.rank(&w).unwrap(), 1);

        let perm = Dfa::parse("states: 2\nletters: a\na: 2 1\n").unwrap();
        assert_eq!(shortest_synchronizing_word(&perm, CAP).unwrap(), None);
    }

    #[test]
    fn complete_reachability() {
        assert!(is_completely_reachable(&fig2_example(), CAP).unwrap().complete);
        assert!(is_completely_reachable(&bv_counterexample(), CAP).unwrap().complete);
        let id = Dfa::parse("states: 2\nletters: a\na: 1 2\n").unwrap();
        let r = is_completely_reachable(&id, CAP).unwrap();
        assert!(!r.complete);
        assert_eq!(r.missing, Some(set(2, &[1])));
        assert!(matches!(
            is_completely_reachable(&cerny(12).unwrap(), 100),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let c = cerny(8).unwrap();
        assert!(matches!(
            power_bfs(&c, c.states(), 10),
            Err(Error::CapExceeded { cap: 10, .. })
        ));
    }

    #[test]
    fn pair_distances() {
        let p = p2n(7).unwrap();
        let ab = [0, 1];
        assert_eq!(
            pair_distance(&p, &ab, set(7, &[2, 4]), set(7, &[3, 5])).unwrap(),
            Some(14)
        );
        assert_eq!(
            pair_distance(&p, &ab, set(7, &[2, 4]), set(7, &[2, 4])).unwrap(),
            Some(0)
        );
        assert!(pair_distance(&p, &ab, set(7, &[2]), set(7, &[2, 4])).is_err());

        // C4 over {a}: a maps q4 to q1 and fixes the rest, so {1,2} is a fixed pair
        let c4 = cerny(4).unwrap();
        let oracle = {
            let mut cur = set(4, &[1, 2]);
            let mut found = None;
            for k in 0..=4 {
                if cur == set(4, &[1, 3]) {
                    found = Some(k);
                    break;
                }
                cur = c4.apply_letter(cur, 0);
                if cur.len() < 2 {
                    break;
                }
            }
            found
        };
        assert_eq!(
            pair_distance(&c4, &[0], set(4, &[1, 2]), set(4, &[1, 3])).unwrap(),
            oracle
        );
        assert_eq!(oracle, None);
    }

    #[test]
    fn audit_p2_7() {
        let p = p2n(7).unwrap();
        let report = don_audit(&p, CAP).unwrap();
        let target = set(7, &[3, 5]).complement(7);
        let entry = report.reachable.iter().find(|e| e.subset == target.to_vec()).unwrap();
        assert_eq!((entry.dist, entry.bound, entry.violated), (15, 14, true));
        assert!(report.violations(false).iter().any(|e| e.subset == target.to_vec()));
    }

    #[test]
    fn audit_cerny4_clean() {
        let report = don_audit(&cerny(4).unwrap(), CAP).unwrap();
        assert!(report.violations(false).is_empty());
        // 15 non-empty subsets minus Q, every one reachable in C4
        assert_eq!(report.reachable.len(), 14);
    }

    #[test]
    fn audit_fig5_included() {
        let d = fig5_p4();
        let report = don_audit(&d, CAP).unwrap();
        let s = fig5_set(&[1, 2, 3]).to_vec();
        let v = report.violations(true);
        let e = v.iter().find(|e| e.subset == s).unwrap();
        assert_eq!((e.size, e.dist, e.bound), (3, 6, 4));
        // sorted by excess
        assert!(v.windows(2).all(|w| w[0].excess() >= w[1].excess()));
    }

    #[test]
    fn lemma_check() {
        let c4 = cerny(4).unwrap();
        let index = power_bfs(&c4, c4.states(), CAP).unwrap();
        let t = set(4, &[1]);
        assert!(check_shortest_word_lemma(&c4, &index, t).unwrap());
        assert_eq!(prefix_images(&c4, &index, t).unwrap().len(), 10);

        let d = fig2_example();
        let index = power_bfs(&d, d.states(), CAP).unwrap();
        assert!(check_shortest_word_lemma(&d, &index, set(3, &[2, 3])).unwrap());
        for (s, _) in index.iter() {
            assert!(check_shortest_word_lemma(&d, &index, s).unwrap());
        }
    }

    #[test]
    fn pred_chain_reproduces_words() {
        let c4 = cerny(4).unwrap();
        let index = power_bfs(&c4, c4.states(), CAP).unwrap();
        for (s, d) in index.iter() {
            let w = index.word_to(s).unwrap();
            assert_eq!(w.len(), d);
            assert_eq!(c4.apply(c4.states(), &w).unwrap(), s);
            if let Some((p, l)) = index.pred(s) {
                assert_eq!(c4.apply_letter(p, l), s);
            }
        }
    }
}
