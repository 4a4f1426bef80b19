//! Seeded random automata and digraphs for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automaton::Dfa;

fn letter_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    p.shuffle(rng);
    p
}

/// A permutation with one state redirected onto another's image, so the
/// map has rank exactly `n - 1` (for `n >= 2`).
fn random_corank_one<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p = random_permutation(rng, n);
    if n >= 2 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        p[i] = p[j];
    }
    p
}

/// Uniformly random complete automaton with `k` letters.
pub fn random_dfa<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Dfa {
    let images = (0..k).map(|_| (0..n).map(|_| rng.gen_range(1..=n)).collect()).collect();
    Dfa::new(n, letter_names(k), images).expect("generated tables are valid")
}

/// Random automaton whose first letter has rank `n - 1`; the other letters
/// are drawn evenly from permutations, rank-`(n - 1)` maps and arbitrary maps.
pub fn random_corank_dfa<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Dfa {
    let mut images = vec![random_corank_one(rng, n)];
    for _ in 1..k {
        images.push(match rng.gen_range(0..3) {
            0 => random_permutation(rng, n),
            1 => random_corank_one(rng, n),
            _ => (0..n).map(|_| rng.gen_range(1..=n)).collect(),
        });
    }
    Dfa::new(n, letter_names(k), images).expect("generated tables are valid")
}

/// Random digraph on nodes `1..=n` without self-loops; each ordered pair is
/// an edge with probability `p`.
pub fn random_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if u != v && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}
