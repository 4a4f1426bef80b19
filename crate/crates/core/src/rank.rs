//! Words of rank `n - 1`: their excluded, duplicated and root states, the
//! Γ₁-graph they induce, and the extension method built on it.
//!
//! The Γ₁-graph is computed exactly from the closure of the letters under
//! composition, restricted to transformations of rank at least `n - 1`.
//! Rank never increases along a word, so every prefix of a rank-`(n - 1)`
//! word is itself of rank at least `n - 1` and the pruning loses nothing.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::automaton::{Dfa, StateSet, Word};
use crate::error::{Error, Result};
use crate::power::ReachabilityIndex;

/// Default bound on the number of distinct transformations in a closure.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000_000;

/// A full map `Q -> Q` together with a shortest word realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformation {
    // 0-based images
    images: Vec<u8>,
    rank: usize,
    witness: Word,
}

impl Transformation {
    fn from_parts(images: Vec<u8>, witness: Word) -> Self {
        let rank = image_bits(&images).count_ones() as usize;
        Transformation { images, rank, witness }
    }

    pub fn identity(n: usize) -> Self {
        Transformation::from_parts((0..n as u8).collect(), Word::empty())
    }

    pub fn from_word(dfa: &Dfa, w: &Word) -> Result<Self> {
        Ok(Transformation::from_parts(dfa.word_map(w)?, w.clone()))
    }

    pub fn letter(dfa: &Dfa, letter: usize) -> Result<Self> {
        Transformation::from_word(dfa, &Word::new(vec![letter]))
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn witness(&self) -> &Word {
        &self.witness
    }

    /// Image of 1-indexed state `q`.
    pub fn image(&self, q: usize) -> usize {
        self.images[q - 1] as usize + 1
    }

    /// Images of states `1..=n`, 1-indexed.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&q| q as usize + 1).collect()
    }

    pub fn image_set(&self) -> StateSet {
        StateSet::from_bits(image_bits(&self.images))
    }

    pub fn apply(&self, s: StateSet) -> StateSet {
        let mut out = 0u64;
        for i in s.indices() {
            out |= 1u64 << self.images[i];
        }
        StateSet::from_bits(out)
    }

    /// States whose image lies in `s`.
    pub fn preimage(&self, s: StateSet) -> StateSet {
        let mut out = 0u64;
        for (i, &q) in self.images.iter().enumerate() {
            if s.bits() & (1u64 << q) != 0 {
                out |= 1u64 << i;
            }
        }
        StateSet::from_bits(out)
    }

    /// `self` followed by `other`; the witness is the concatenation.
    pub fn then(&self, other: &Transformation) -> Transformation {
        assert_eq!(self.n(), other.n(), "transformations over different state sets");
        let images = self.images.iter().map(|&q| other.images[q as usize]).collect();
        Transformation::from_parts(images, self.witness.concat(&other.witness))
    }
}

fn image_bits(images: &[u8]) -> u64 {
    images.iter().fold(0u64, |acc, &q| acc | (1u64 << q))
}

/// Excluded state, duplicated state and roots of a rank-`(n - 1)` transformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSignature {
    pub excl: usize,
    pub dupl: usize,
    /// The two states mapped onto `dupl`.
    pub root: StateSet,
    pub witness: Word,
}

pub fn signature_of(t: &Transformation) -> Result<RankSignature> {
    let n = t.n();
    if n == 0 || t.rank() + 1 != n {
        return Err(Error::WrongRank {
            expected: n.saturating_sub(1),
            found: t.rank(),
        });
    }
    let excl = t.image_set().complement(n).iter().next().unwrap();
    let mut counts = vec![0u8; n];
    for &q in &t.images {
        counts[q as usize] += 1;
    }
    let dupl = counts.iter().position(|&c| c == 2).unwrap() + 1;
    let root = t.preimage(StateSet::singleton(dupl));
    Ok(RankSignature {
        excl,
        dupl,
        root,
        witness: t.witness().clone(),
    })
}

/// Result of concatenating two rank-`(n - 1)` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Composition {
    /// The product has rank `n - 2`.
    RankDropped,
    Signature(RankSignature),
}

/// Signature of `t1 t2` derived from the signatures of the factors:
/// the product keeps rank `n - 1` iff `excl(t1) ∈ root(t2)`, and then
/// `excl = excl(t2)`, `dupl = dupl(t1) t2`, `root = root(t1)`.
pub fn compose_check(t1: &Transformation, t2: &Transformation) -> Result<Composition> {
    let s1 = signature_of(t1)?;
    let s2 = signature_of(t2)?;
    if !s2.root.contains(s1.excl) {
        return Ok(Composition::RankDropped);
    }
    Ok(Composition::Signature(RankSignature {
        excl: s2.excl,
        dupl: t2.image(s1.dupl),
        root: s1.root,
        witness: s1.witness.concat(&s2.witness),
    }))
}

/// All distinct transformations of rank at least `n - 1` generated by the
/// letters, each with its shortest (then lexicographically least) witness.
#[derive(Clone, Debug)]
pub struct HighRankClosure {
    n: usize,
    // transformation i occupies images[i * n..(i + 1) * n]
    images: Vec<u8>,
    parent: Vec<Option<(u32, u32)>>,
}

impl HighRankClosure {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    fn images_of(&self, i: usize) -> &[u8] {
        &self.images[i * self.n..(i + 1) * self.n]
    }

    fn rank_of(&self, i: usize) -> usize {
        image_bits(self.images_of(i)).count_ones() as usize
    }

    fn witness_of(&self, mut i: usize) -> Word {
        let mut letters = Vec::new();
        while let Some((p, l)) = self.parent[i] {
            letters.push(l as usize);
            i = p as usize;
        }
        letters.reverse();
        Word::new(letters)
    }

    pub fn get(&self, i: usize) -> Transformation {
        Transformation::from_parts(self.images_of(i).to_vec(), self.witness_of(i))
    }

    /// Transformations in BFS order.
    pub fn iter(&self) -> impl Iterator<Item = Transformation> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    /// Only the rank-`(n - 1)` members, in BFS order.
    pub fn corank_one(&self) -> impl Iterator<Item = Transformation> + '_ {
        (0..self.len())
            .filter(|&i| self.rank_of(i) + 1 == self.n)
            .map(|i| self.get(i))
    }
}

pub fn high_rank_closure(dfa: &Dfa, cap: usize) -> Result<HighRankClosure> {
    let n = dfa.n();
    let min_rank = n.saturating_sub(1);
    let mut closure = HighRankClosure {
        n,
        images: (0..n as u8).collect(),
        parent: vec![None],
    };
    let mut seen: HashMap<Vec<u8>, u32> = HashMap::new();
    seen.insert(closure.images.clone(), 0);
    let mut queue = VecDeque::from([0u32]);
    let mut next = vec![0u8; n];
    while let Some(i) = queue.pop_front() {
        for letter in 0..dfa.num_letters() {
            let map = dfa.letter_map(letter);
            for (dst, &q) in next.iter_mut().zip(closure.images_of(i as usize)) {
                *dst = map[q as usize];
            }
            if (image_bits(&next).count_ones() as usize) < min_rank || seen.contains_key(&next) {
                continue;
            }
            let id = closure.len() as u32;
            if id as usize >= cap {
                return Err(Error::CapExceeded {
                    cap,
                    what: "transformations",
                });
            }
            seen.insert(next.clone(), id);
            closure.images.extend_from_slice(&next);
            closure.parent.push(Some((i, letter as u32)));
            queue.push_back(id);
        }
    }
    Ok(closure)
}

/// An edge `excl(w) -> dupl(w)` of Γ₁ with a shortest inducing word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma1Edge {
    pub from: usize,
    pub to: usize,
    pub witness: Word,
}

/// The Γ₁-graph: nodes are states `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma1Graph {
    n: usize,
    // sorted by (from, to)
    edges: Vec<Gamma1Edge>,
}

#[derive(Serialize)]
struct EdgeRecord<'a> {
    excl: usize,
    dupl: usize,
    witness: &'a str,
}

impl Gamma1Graph {
    /// A graph from explicit edges. Self-loops and duplicates are rejected.
    pub fn from_edges(n: usize, mut edges: Vec<Gamma1Edge>) -> Result<Self> {
        edges.sort_by_key(|e| (e.from, e.to));
        for e in &edges {
            if e.from == e.to || e.from == 0 || e.to == 0 || e.from > n || e.to > n {
                return Err(Error::Precondition(format!("invalid edge ({}, {})", e.from, e.to)));
            }
        }
        if edges.windows(2).any(|w| (w[0].from, w[0].to) == (w[1].from, w[1].to)) {
            return Err(Error::Precondition("duplicate edge".into()));
        }
        Ok(Gamma1Graph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Gamma1Edge] {
        &self.edges
    }

    pub fn edge(&self, from: usize, to: usize) -> Option<&Gamma1Edge> {
        self.edges
            .binary_search_by_key(&(from, to), |e| (e.from, e.to))
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edge(from, to).is_some()
    }

    pub fn in_degree(&self, q: usize) -> usize {
        self.edges.iter().filter(|e| e.to == q).count()
    }

    pub fn out_degree(&self, q: usize) -> usize {
        self.edges.iter().filter(|e| e.from == q).count()
    }

    /// DOT rendering with edges labelled by their witness words.
    pub fn to_dot(&self, dfa: &Dfa) -> String {
        let mut out = String::from("digraph {\n");
        for q in 1..=self.n {
            out.push_str(&format!("  q{q};\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  q{} -> q{} [label=\"{}\"];\n",
                e.from,
                e.to,
                dfa.format_word(&e.witness)
            ));
        }
        out.push_str("}\n");
        out
    }

    /// One `excl dupl witness` line per edge.
    pub fn to_triples(&self, dfa: &Dfa) -> String {
        self.edges
            .iter()
            .map(|e| format!("{} {} {}\n", e.from, e.to, dfa.format_word(&e.witness)))
            .collect()
    }

    pub fn to_json(&self, dfa: &Dfa) -> serde_json::Value {
        let words: Vec<String> = self.edges.iter().map(|e| dfa.format_word(&e.witness)).collect();
        let edges: Vec<EdgeRecord> = self
            .edges
            .iter()
            .zip(&words)
            .map(|(e, w)| EdgeRecord {
                excl: e.from,
                dupl: e.to,
                witness: w,
            })
            .collect();
        serde_json::json!({ "n": self.n, "edges": edges })
    }
}

/// Γ₁ from a precomputed closure: one edge per realized `(excl, dupl)` pair,
/// witnessed by the first transformation in BFS order that realizes it.
pub fn gamma1_from_closure(closure: &HighRankClosure) -> Gamma1Graph {
    let mut edges: HashMap<(usize, usize), Word> = HashMap::new();
    for t in closure.corank_one() {
        let sig = signature_of(&t).expect("rank checked by corank_one");
        edges.entry((sig.excl, sig.dupl)).or_insert(sig.witness);
    }
    let edges = edges
        .into_iter()
        .map(|((from, to), witness)| Gamma1Edge { from, to, witness })
        .collect();
    Gamma1Graph::from_edges(closure.n(), edges).expect("excl and dupl always differ")
}

pub fn gamma1(dfa: &Dfa, cap: usize) -> Result<Gamma1Graph> {
    Ok(gamma1_from_closure(&high_rank_closure(dfa, cap)?))
}

/// Strong connectivity of a digraph on nodes `1..=n`, by forward and
/// backward reachability from node 1.
pub fn digraph_strongly_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut fwd = vec![Vec::new(); n + 1];
    let mut bwd = vec![Vec::new(); n + 1];
    for &(u, v) in edges {
        fwd[u].push(v);
        bwd[v].push(u);
    }
    let reaches_all = |adj: &[Vec<usize>]| {
        let mut seen = vec![false; n + 1];
        seen[1] = true;
        let mut stack = vec![1];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    };
    reaches_all(&fwd) && reaches_all(&bwd)
}

pub fn is_strongly_connected(g: &Gamma1Graph) -> bool {
    let edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.from, e.to)).collect();
    digraph_strongly_connected(g.n, &edges)
}

fn check_proper(n: usize, s: StateSet) -> Result<()> {
    let full = StateSet::full(n);
    if s.is_empty() || s == full || !s.is_subset(full) {
        return Err(Error::InvalidStateSet(format!(
            "{s} is not a non-empty proper subset of the {n} states"
        )));
    }
    Ok(())
}

/// An edge `(u, v)` with `u ∉ s` and `v ∈ s`. Among candidates the shortest
/// witness wins, ties broken lexicographically.
pub fn intersecting_edge(g: &Gamma1Graph, s: StateSet) -> Result<Option<&Gamma1Edge>> {
    check_proper(g.n, s)?;
    Ok(g.edges
        .iter()
        .filter(|e| !s.contains(e.from) && s.contains(e.to))
        .min_by(|a, b| {
            (a.witness.len(), a.witness.letters(), a.from, a.to).cmp(&(
                b.witness.len(),
                b.witness.letters(),
                b.from,
                b.to,
            ))
        }))
}

/// Extends `s` along an intersecting edge: returns `S'` with `|S'| = |s| + 1`
/// and `S' w = s`, where `w` is the edge's witness.
pub fn extend_set(dfa: &Dfa, g: &Gamma1Graph, s: StateSet) -> Result<Option<(StateSet, Word)>> {
    let Some(edge) = intersecting_edge(g, s)? else {
        return Ok(None);
    };
    let t = Transformation::from_word(dfa, &edge.witness)?;
    let pre = t.preimage(s);
    debug_assert_eq!(pre.len(), s.len() + 1);
    debug_assert_eq!(t.apply(pre), s);
    Ok(Some((pre, edge.witness.clone())))
}

/// Given `w = w1 w2` with `rank(w2) = n - 1` and `|Q w1| = |Q w| + 1`,
/// returns the edge `(excl(w2), dupl(w2))`, which intersects `Q w`.
pub fn intersect_from_factorization(dfa: &Dfa, g: &Gamma1Graph, w1: &Word, w2: &Word) -> Result<Gamma1Edge> {
    let t2 = Transformation::from_word(dfa, w2)?;
    if t2.rank() + 1 != dfa.n() {
        return Err(Error::Precondition(format!(
            "the suffix has rank {}, expected {}",
            t2.rank(),
            dfa.n() - 1
        )));
    }
    let before = dfa.apply(dfa.states(), w1)?;
    let s = t2.apply(before);
    if before.len() != s.len() + 1 {
        return Err(Error::Precondition(format!(
            "|Q w1| = {} but |Q w1 w2| = {}",
            before.len(),
            s.len()
        )));
    }
    let sig = signature_of(&t2)?;
    if s.contains(sig.excl) || !s.contains(sig.dupl) {
        return Err(Error::Precondition(format!(
            "edge ({}, {}) does not intersect {s}",
            sig.excl, sig.dupl
        )));
    }
    if !g.has_edge(sig.excl, sig.dupl) {
        return Err(Error::Precondition(format!(
            "edge ({}, {}) is missing from the graph",
            sig.excl, sig.dupl
        )));
    }
    Ok(Gamma1Edge {
        from: sig.excl,
        to: sig.dupl,
        witness: w2.clone(),
    })
}

/// Whether the reachable proper subset `s` is the image of a reachable
/// `T` with `|T| = |s| + 1` under some rank-`(n - 1)` transformation whose
/// roots lie in `T`, i.e. whether some word reaching `s` ends with a
/// size-dropping suffix of rank `n - 1`.
pub fn theorem_premise_holds(
    dfa: &Dfa,
    s: StateSet,
    index: &ReachabilityIndex,
    closure: &HighRankClosure,
) -> Result<bool> {
    check_proper(dfa.n(), s)?;
    if index.source() != dfa.states() || !index.contains(s) {
        return Err(Error::Unreachable(s));
    }
    let candidates: Vec<StateSet> = index
        .iter()
        .map(|(t, _)| t)
        .filter(|t| t.len() == s.len() + 1)
        .collect();
    if candidates.is_empty() {
        return Ok(false);
    }
    for t in closure.corank_one() {
        let root = signature_of(&t)?.root;
        if candidates.iter().any(|&big| root.is_subset(big) && t.apply(big) == s) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{bv_counterexample, fig2_example};
    use crate::power::{power_bfs, DEFAULT_FRONTIER_CAP};

    fn set(n: usize, states: &[usize]) -> StateSet {
        StateSet::from_states(n, states.iter().copied()).unwrap()
    }

    fn word(dfa: &Dfa, w: &str) -> Transformation {
        Transformation::from_word(dfa, &dfa.parse_word(w).unwrap()).unwrap()
    }

    fn sig(dfa: &Dfa, w: &str) -> (usize, usize, Vec<usize>) {
        let s = signature_of(&word(dfa, w)).unwrap();
        (s.excl, s.dupl, s.root.to_vec())
    }

    #[test]
    fn bv_letter_signatures() {
        let bv = bv_counterexample();
        assert_eq!(sig(&bv, "a"), (1, 2, vec![1, 6]));
        assert_eq!(sig(&bv, "d"), (4, 5, vec![5, 6]));
    }

    #[test]
    fn fig2_letter_signatures() {
        let d = fig2_example();
        assert_eq!(sig(&d, "c"), (2, 3, vec![1, 2]));
        assert_eq!(sig(&d, "b"), (1, 2, vec![1, 3]));
    }

    #[test]
    fn wrong_rank_is_rejected() {
        let d = fig2_example();
        assert_eq!(
            signature_of(&Transformation::identity(3)).unwrap_err(),
            Error::WrongRank { expected: 2, found: 3 }
        );
        let cb = word(&d, "cb");
        assert_eq!(cb.rank(), 1);
        assert!(compose_check(&cb, &word(&d, "a")).is_err());
    }

    #[test]
    fn compose_rules_on_fig2() {
        let d = fig2_example();
        let (b, c) = (word(&d, "b"), word(&d, "c"));
        match compose_check(&b, &b).unwrap() {
            Composition::Signature(s) => assert_eq!((s.excl, s.dupl), (1, 3)),
            other => panic!("{other:?}"),
        }
        match compose_check(&c, &c).unwrap() {
            Composition::Signature(s) => assert_eq!((s.excl, s.dupl), (2, 1)),
            other => panic!("{other:?}"),
        }
        assert_eq!(compose_check(&c, &b).unwrap(), Composition::RankDropped);
        assert_eq!(c.then(&b).rank(), 1);
    }

    #[test]
    fn identity_closure() {
        let d = Dfa::parse("states: 3\nletters: a\na: 1 2 3\n").unwrap();
        let cl = high_rank_closure(&d, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl.get(0), Transformation::identity(3));
    }

    #[test]
    fn closure_cap() {
        let d = crate::families::cerny(6).unwrap();
        assert!(matches!(
            high_rank_closure(&d, 5),
            Err(Error::CapExceeded { cap: 5, .. })
        ));
    }

    #[test]
    fn fig2_gamma1() {
        let d = fig2_example();
        let g = gamma1(&d, DEFAULT_CLOSURE_CAP).unwrap();
        for (u, v) in [(1, 2), (1, 3), (2, 3), (2, 1), (3, 2)] {
            assert!(g.has_edge(u, v), "missing ({u},{v})");
        }
        assert_eq!(d.format_word(&g.edge(3, 2).unwrap().witness), "a");
        // abca realizes (3,1) too, but cca is shorter
        assert_eq!(d.format_word(&g.edge(3, 1).unwrap().witness), "cca");
        let abca = signature_of(&word(&d, "abca")).unwrap();
        assert_eq!((abca.excl, abca.dupl), (3, 1));
        assert_eq!(g.edges().len(), 6);
        assert!(is_strongly_connected(&g));
        let dot = g.to_dot(&d);
        assert!(dot.contains("q3 -> q2 [label=\"a\"];"), "{dot}");
        assert!(g.to_triples(&d).contains("3 2 a\n"));
    }

    #[test]
    fn bv_gamma1() {
        let bv = bv_counterexample();
        let g = gamma1(&bv, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.in_degree(1), 0);
        for (u, v) in [(2, 3), (3, 4), (4, 5), (5, 6), (6, 2), (1, 2)] {
            assert!(g.has_edge(u, v));
        }
        assert!(!is_strongly_connected(&g));
        assert!(g.edges().iter().all(|e| e.from != e.to));
    }

    #[test]
    fn trivial_graphs() {
        assert!(digraph_strongly_connected(1, &[]));
        assert!(!digraph_strongly_connected(2, &[(1, 2)]));
        assert!(digraph_strongly_connected(2, &[(1, 2), (2, 1)]));
    }

    #[test]
    fn intersecting_edges_on_bv() {
        let bv = bv_counterexample();
        let g = gamma1(&bv, DEFAULT_CLOSURE_CAP).unwrap();
        assert!(intersecting_edge(&g, set(6, &[1])).unwrap().is_none());
        let e = intersecting_edge(&g, set(6, &[2])).unwrap().unwrap();
        assert!((e.from, e.to) == (1, 2) || (e.from, e.to) == (6, 2));
        assert!(intersecting_edge(&g, bv.states()).is_err());
        assert!(intersecting_edge(&g, StateSet::EMPTY).is_err());
    }

    #[test]
    fn extension() {
        let bv = bv_counterexample();
        let g = gamma1(&bv, DEFAULT_CLOSURE_CAP).unwrap();
        let (pre, w) = extend_set(&bv, &g, set(6, &[2])).unwrap().unwrap();
        assert_eq!(pre.len(), 2);
        // preimage of {2} under the chosen witness "a" is root(a)
        assert_eq!(bv.format_word(&w), "a");
        assert_eq!(pre, set(6, &[1, 6]));
        assert_eq!(bv.apply(pre, &w).unwrap(), set(6, &[2]));
        assert_eq!(extend_set(&bv, &g, set(6, &[1])).unwrap(), None);

        let d = fig2_example();
        let g = gamma1(&d, DEFAULT_CLOSURE_CAP).unwrap();
        let (pre, w) = extend_set(&d, &g, set(3, &[2])).unwrap().unwrap();
        assert_eq!(d.format_word(&w), "a");
        assert_eq!(pre, set(3, &[2, 3]));
    }

    #[test]
    fn factorization_edges() {
        let d = fig2_example();
        let g = gamma1(&d, DEFAULT_CLOSURE_CAP).unwrap();
        let e = intersect_from_factorization(&d, &g, &Word::empty(), &d.parse_word("c").unwrap()).unwrap();
        assert_eq!((e.from, e.to), (2, 3));
        // |Q a| = |Q a b| = 2
        let err = intersect_from_factorization(&d, &g, &d.parse_word("a").unwrap(), &d.parse_word("b").unwrap());
        assert!(matches!(err, Err(Error::Precondition(_))));
        // rank(cb) = 1
        let err = intersect_from_factorization(&d, &g, &Word::empty(), &d.parse_word("cb").unwrap());
        assert!(matches!(err, Err(Error::Precondition(_))));

        let bv = bv_counterexample();
        let g = gamma1(&bv, DEFAULT_CLOSURE_CAP).unwrap();
        let e = intersect_from_factorization(&bv, &g, &Word::empty(), &bv.parse_word("b").unwrap()).unwrap();
        assert_eq!((e.from, e.to), (2, 3));
    }

    #[test]
    fn theorem_premise() {
        let bv = bv_counterexample();
        let index = power_bfs(&bv, bv.states(), DEFAULT_FRONTIER_CAP).unwrap();
        let cl = high_rank_closure(&bv, DEFAULT_CLOSURE_CAP).unwrap();
        assert!(!theorem_premise_holds(&bv, set(6, &[1]), &index, &cl).unwrap());
        assert!(theorem_premise_holds(&bv, bv.states(), &index, &cl).is_err());

        let d = fig2_example();
        let index = power_bfs(&d, d.states(), DEFAULT_FRONTIER_CAP).unwrap();
        let cl = high_rank_closure(&d, DEFAULT_CLOSURE_CAP).unwrap();
        for bits in 1..7u64 {
            assert!(theorem_premise_holds(&d, StateSet::from_bits(bits), &index, &cl).unwrap());
        }
    }
}
