//! Generators for the automata studied here.
//!
//! [`p2n`] and [`bv_counterexample`] verify their defining properties on
//! every call and refuse to return an automaton that fails them.

use std::fmt;
use std::str::FromStr;

use crate::automaton::{Dfa, StateSet};
use crate::error::{Error, Result};
use crate::power::pair_distance;
use crate::rank::{signature_of, Transformation};

/// Default bound on the alphabet size of [`p3n`].
pub const DEFAULT_LETTER_CAP: usize = 1000;

/// The Černý automaton `C_n`: `a` sends `q_n` to `q_1` and fixes the rest,
/// `b` is the cyclic shift `q_i -> q_{i+1}`.
pub fn cerny(n: usize) -> Result<Dfa> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("cerny needs n >= 2, got {n}")));
    }
    if n > crate::automaton::MAX_STATES {
        return Err(Error::TooManyStates(n));
    }
    Dfa::from_fn(n, vec!["a", "b"], |l, q| match (l, q) {
        (0, q) if q == n => 1,
        (0, q) => q,
        (_, q) => q % n + 1,
    })
}

/// The three-state completely reachable automaton with a strongly connected Γ₁.
pub fn fig2_example() -> Dfa {
    Dfa::new(
        3,
        vec!["a", "b", "c"],
        vec![vec![1, 2, 2], vec![2, 3, 2], vec![3, 3, 1]],
    )
    .expect("static table")
}

/// `(n^2 + 5n - 28) / 4`: square-graph distance from `{q2,q4}` to
/// `{q_{k+2},q_{k+4}}` under the permutation letters of [`p2n`].
pub fn p2n_pair_distance(n: usize) -> usize {
    (n * n + 5 * n - 28) / 4
}

/// The automaton with permutation letters `a`, `b` and a rank-`(n-2)` letter
/// `c`, for `n ≡ 3 (mod 4)`, `n >= 7`, `n = 2k + 5`.
///
/// `a` is the 4-cycle `(q1 q2 q3 q4)` together with transpositions, `b`
/// swaps `q1, q6` and `q3, q5` and further pairs. Beyond `q4` the states form
/// two chains, odd `q3 - q5 - q7 - ... - q_{2k+5}` and even
/// `q1 - q6 - q8 - ... - q_{2k+4}`, whose links alternate between `b` and
/// `a` starting with `b`. Unpaired chain ends are fixed. `c` sends `q2` to
/// `q3`, `q4` to `q1` and fixes everything else.
pub fn p2n(n: usize) -> Result<Dfa> {
    if n < 7 || n % 4 != 3 {
        return Err(Error::InvalidParameter(format!(
            "p2n needs n >= 7 with n = 3 (mod 4), got {n}"
        )));
    }
    if n > crate::automaton::MAX_STATES {
        return Err(Error::TooManyStates(n));
    }
    let k = (n - 5) / 2;
    let mut a: Vec<usize> = (0..=n).collect();
    let mut b: Vec<usize> = (0..=n).collect();
    a[1] = 2;
    a[2] = 3;
    a[3] = 4;
    a[4] = 1;
    let odd: Vec<usize> = (3..=2 * k + 5).step_by(2).collect();
    let even: Vec<usize> = std::iter::once(1).chain((6..=2 * k + 4).step_by(2)).collect();
    for chain in [&odd, &even] {
        for (i, link) in chain.windows(2).enumerate() {
            let letter = if i % 2 == 0 { &mut b } else { &mut a };
            letter[link[0]] = link[1];
            letter[link[1]] = link[0];
        }
    }
    let c: Vec<usize> = (0..=n)
        .map(|q| match q {
            2 => 3,
            4 => 1,
            q => q,
        })
        .collect();
    let dfa = Dfa::new(
        n,
        vec!["a", "b", "c"],
        vec![a[1..].to_vec(), b[1..].to_vec(), c[1..].to_vec()],
    )?;

    let from = StateSet::from_states(n, [2, 4])?;
    let to = StateSet::from_states(n, [k + 2, k + 4])?;
    let measured = pair_distance(&dfa, &[0, 1], from, to)?;
    let expected = p2n_pair_distance(n);
    if measured != Some(expected) {
        return Err(Error::SelfCheck(format!(
            "p2n({n}): pair distance {from} -> {to} is {measured:?}, expected {expected}"
        )));
    }
    Ok(dfa)
}

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// The `⌊n/2⌋`-subsets of `{q2, ..., qn}` in lexicographic order of their
/// sorted index tuples.
pub fn p3n_sets(n: usize) -> Vec<Vec<usize>> {
    let m = n / 2;
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (2..2 + m).collect();
    if m == 0 || m > n - 1 {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (m - 1 - i) {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..m {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The automaton whose set `{q_{n-⌊n/2⌋+1}, ..., q_n}` needs a word of
/// length `C(n-1, ⌊n/2⌋)`.
///
/// Letters are `a, l1, ..., l{L-1}` where `L = C(n-1, ⌊n/2⌋)`. With the
/// sets `S_1..S_L` of [`p3n_sets`], `l_i` fixes `q1`, maps the `m`-th
/// element of `S_i` to the `m`-th element of `S_{i+1}` and every other
/// state to `q1`.
pub fn p3n(n: usize, letter_cap: usize) -> Result<Dfa> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("p3n needs n >= 4, got {n}")));
    }
    if n > crate::automaton::MAX_STATES {
        return Err(Error::TooManyStates(n));
    }
    let m = n / 2;
    let total = binomial(n - 1, m).filter(|&l| l <= letter_cap).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "p3n({n}) needs C({}, {m}) letters, above the cap of {letter_cap}",
            n - 1
        ))
    })?;
    let sets = p3n_sets(n);
    debug_assert_eq!(sets.len(), total);

    let mut names = vec!["a".to_string()];
    let mut images = vec![(1..=n)
        .map(|q| match q {
            1 => 2,
            q if q <= m + 1 => q,
            _ => 2,
        })
        .collect::<Vec<_>>()];
    for i in 0..total - 1 {
        names.push(format!("l{}", i + 1));
        let mut row = vec![1; n];
        for (src, dst) in sets[i].iter().zip(&sets[i + 1]) {
            row[src - 1] = *dst;
        }
        images.push(row);
    }
    Dfa::new(n, names, images)
}

/// State of [`fig5_p4`] carrying the figure's label `0..=3`. Label 0 is
/// stored as state 4 so labels 1, 2, 3 keep their numbers.
pub fn fig5_state(label: usize) -> usize {
    assert!(label <= 3, "fig5 labels are 0..=3");
    if label == 0 {
        4
    } else {
        label
    }
}

pub fn fig5_set(labels: &[usize]) -> StateSet {
    labels
        .iter()
        .fold(StateSet::EMPTY, |s, &l| s | StateSet::singleton(fig5_state(l)))
}

/// The four-state automaton where no subset of `{1, 2, 3}` is reachable by a
/// word shorter than 6. In figure labels: `a: 0->1, 1->0, 2->2, 3->0`,
/// `b: 0->0, 1->2, 2->3, 3->1`; see [`fig5_state`] for the numbering.
pub fn fig5_p4() -> Dfa {
    let a = [(0, 1), (1, 0), (2, 2), (3, 0)];
    let b = [(0, 0), (1, 2), (2, 3), (3, 1)];
    let row = |table: &[(usize, usize)]| {
        let mut r = vec![0; 4];
        for &(from, to) in table {
            r[fig5_state(from) - 1] = fig5_state(to);
        }
        r
    };
    Dfa::new(4, vec!["a", "b"], vec![row(&a), row(&b)]).expect("static table")
}

/// `(excl, dupl, roots)` of the six letters of [`bv_counterexample`].
pub const BV_LETTER_SIGNATURES: [(usize, usize, [usize; 2]); 6] = [
    (1, 2, [1, 6]),
    (2, 3, [5, 6]),
    (3, 4, [5, 6]),
    (4, 5, [5, 6]),
    (5, 6, [5, 6]),
    (6, 2, [5, 6]),
];

/// The six-state completely reachable automaton whose Γ₁ is not strongly
/// connected. Checks every letter's signature against
/// [`BV_LETTER_SIGNATURES`].
pub fn try_bv_counterexample() -> Result<Dfa> {
    let dfa = Dfa::new(
        6,
        vec!["a", "b", "c", "d", "e", "f"],
        vec![
            vec![2, 3, 4, 5, 6, 2],
            vec![4, 6, 5, 1, 3, 3],
            vec![1, 2, 5, 6, 4, 4],
            vec![1, 2, 3, 6, 5, 5],
            vec![1, 2, 3, 4, 6, 6],
            vec![1, 5, 3, 4, 2, 2],
        ],
    )?;
    for (letter, &(excl, dupl, root)) in BV_LETTER_SIGNATURES.iter().enumerate() {
        let sig = signature_of(&Transformation::letter(&dfa, letter)?)?;
        let want_root = StateSet::from_states(6, root)?;
        if (sig.excl, sig.dupl, sig.root) != (excl, dupl, want_root) {
            return Err(Error::SelfCheck(format!(
                "letter {}: got ({}, {}, {}), expected ({excl}, {dupl}, {want_root})",
                dfa.letter_name(letter),
                sig.excl,
                sig.dupl,
                sig.root
            )));
        }
    }
    Ok(dfa)
}

pub fn bv_counterexample() -> Dfa {
    try_bv_counterexample().expect("static table passes its self-check")
}

/// Generator names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Cerny,
    Fig2,
    P2n,
    P3n,
    Fig5,
    Bv,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Cerny,
        Family::Fig2,
        Family::P2n,
        Family::P3n,
        Family::Fig5,
        Family::Bv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cerny => "cerny",
            Family::Fig2 => "fig2",
            Family::P2n => "p2n",
            Family::P3n => "p3n",
            Family::Fig5 => "fig5",
            Family::Bv => "bv",
        }
    }

    /// `n` used when none is given.
    pub fn default_n(self) -> Option<usize> {
        match self {
            Family::Cerny => Some(4),
            Family::P2n => Some(7),
            Family::P3n => Some(5),
            Family::Fig2 | Family::Fig5 | Family::Bv => None,
        }
    }

    pub fn generate(self, n: Option<usize>, letter_cap: usize) -> Result<Dfa> {
        let n = n.or(self.default_n());
        match (self, n) {
            (Family::Cerny, Some(n)) => cerny(n),
            (Family::P2n, Some(n)) => p2n(n),
            (Family::P3n, Some(n)) => p3n(n, letter_cap),
            (Family::Fig2, _) => Ok(fig2_example()),
            (Family::Fig5, _) => Ok(fig5_p4()),
            (Family::Bv, _) => try_bv_counterexample(),
            _ => unreachable!("parametrized families have a default n"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Word;
    use crate::power::{power_bfs, shortest_reaching_word, shortest_word_into, DEFAULT_FRONTIER_CAP};

    fn set(n: usize, states: &[usize]) -> StateSet {
        StateSet::from_states(n, states.iter().copied()).unwrap()
    }

    #[test]
    fn cerny4_matches_figure() {
        let c = cerny(4).unwrap();
        assert_eq!(c.serialize(), "states: 4\nletters: a b\na: 1 2 3 1\nb: 2 3 4 1\n");
        assert_eq!(c.rank(&c.parse_word("b").unwrap()).unwrap(), 4);
        assert!(cerny(1).is_err());
    }

    #[test]
    fn cerny2_sync_length() {
        let c = cerny(2).unwrap();
        let w = crate::power::shortest_synchronizing_word(&c, DEFAULT_FRONTIER_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn fig2_properties() {
        let d = fig2_example();
        let sig = signature_of(&Transformation::letter(&d, 1).unwrap()).unwrap();
        assert_eq!((sig.excl, sig.dupl), (1, 2));
        assert_eq!(d.rank(&d.parse_word("a").unwrap()).unwrap(), 2);
    }

    #[test]
    fn p2n_seven() {
        let p = p2n(7).unwrap();
        let c = Transformation::letter(&p, 2).unwrap();
        assert_eq!(c.rank(), 5);
        assert_eq!(c.image_set(), set(7, &[2, 4]).complement(7));
        assert_eq!(Transformation::letter(&p, 0).unwrap().rank(), 7);
        assert_eq!(Transformation::letter(&p, 1).unwrap().rank(), 7);
        let index = power_bfs(&p, p.states(), DEFAULT_FRONTIER_CAP).unwrap();
        let w = shortest_reaching_word(&index, set(7, &[3, 5]).complement(7)).unwrap();
        assert_eq!(w.len(), 15);
    }

    #[test]
    fn p2n_rejects_bad_n() {
        for n in [3, 5, 8, 9, 13] {
            assert!(matches!(p2n(n), Err(Error::InvalidParameter(_))), "{n}");
        }
    }

    #[test]
    fn p2n_self_check_holds_for_larger_n() {
        for n in [11, 15, 19, 23] {
            p2n(n).unwrap();
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), Some(6));
        assert_eq!(binomial(6, 3), Some(20));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(200, 100), None);
    }

    #[test]
    fn p3n_five() {
        let p = p3n(5, DEFAULT_LETTER_CAP).unwrap();
        assert_eq!(p.num_letters(), 6);
        let sets = p3n_sets(5);
        assert_eq!(sets.len(), 6);
        assert_eq!(sets[0], vec![2, 3]);
        assert_eq!(sets[5], vec![4, 5]);
        let a = p.parse_word("a").unwrap();
        assert_eq!(p.apply(p.states(), &a).unwrap(), set(5, &[2, 3]));
        let index = power_bfs(&p, p.states(), DEFAULT_FRONTIER_CAP).unwrap();
        assert_eq!(shortest_reaching_word(&index, set(5, &[4, 5])).unwrap().len(), 6);
    }

    #[test]
    fn p3n_letters_move_sets_forward() {
        for n in 4..=8 {
            let p = p3n(n, DEFAULT_LETTER_CAP).unwrap();
            let sets: Vec<StateSet> = p3n_sets(n).iter().map(|s| set(n, s)).collect();
            assert_eq!(sets.len(), binomial(n - 1, n / 2).unwrap());
            for i in 0..sets.len() - 1 {
                let w = Word::new(vec![i + 1]);
                assert_eq!(p.apply(sets[i], &w).unwrap(), sets[i + 1]);
                let rest = sets[i].complement(n) & set(n, &[1]).complement(n);
                assert!(p.apply(rest, &w).unwrap().is_subset(set(n, &[1])));
                assert_eq!(p.image(1, i + 1), 1);
            }
        }
    }

    #[test]
    fn p3n_rejects() {
        assert!(p3n(3, 1000).is_err());
        assert!(p3n(12, 100).is_err());
    }

    #[test]
    fn fig5_reading() {
        let d = fig5_p4();
        let a = d.parse_word("a").unwrap();
        let b = d.parse_word("b").unwrap();
        assert_eq!(d.apply(fig5_set(&[0, 1]), &a).unwrap(), fig5_set(&[0, 1]));
        assert_eq!(d.apply(fig5_set(&[0, 1, 2, 3]), &b).unwrap(), d.states());
        let w = shortest_word_into(&d, fig5_set(&[1, 2, 3]), DEFAULT_FRONTIER_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(fig5_set(&[1, 2, 3]), set(4, &[1, 2, 3]));
    }

    #[test]
    fn bv_signatures() {
        let bv = bv_counterexample();
        let sig = |l| {
            let s = signature_of(&Transformation::letter(&bv, l).unwrap()).unwrap();
            (s.excl, s.dupl, s.root.to_vec())
        };
        assert_eq!(sig(2), (3, 4, vec![5, 6]));
        assert_eq!(sig(5), (6, 2, vec![5, 6]));
        let b = bv.parse_word("b").unwrap();
        assert_eq!(bv.apply(set(6, &[4]), &b).unwrap(), set(6, &[1]));
    }

    #[test]
    fn families_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
            f.generate(None, DEFAULT_LETTER_CAP).unwrap();
        }
        assert!("nope".parse::<Family>().is_err());
    }
}
