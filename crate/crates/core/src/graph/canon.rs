//! Canonical forms for very small graphs (at most 8 vertices).
//!
//! A graph is encoded by its upper adjacency triangle: pair `i < j` is bit
//! `j(j−1)/2 + i`. The canonical code is the minimum code over all vertex
//! permutations.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::Graph;

pub const MAX_VERTICES: usize = 8;

#[inline]
pub fn pair_bit(i: usize, j: usize) -> u32 {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    (j * (j - 1) / 2 + i) as u32
}

/// Labeled code of `g`.
pub fn code(g: &Graph) -> u64 {
    assert!(g.n() <= MAX_VERTICES, "canonical forms need ≤ {MAX_VERTICES} vertices");
    g.edges()
        .iter()
        .fold(0u64, |acc, &(u, v)| acc | 1 << pair_bit(u, v))
}

pub fn from_code(k: usize, code: u64) -> Graph {
    let mut g = Graph::new(k);
    for j in 1..k {
        for i in 0..j {
            if code >> pair_bit(i, j) & 1 == 1 {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

fn permuted_code(g: &Graph, perm: &[usize]) -> u64 {
    g.edges()
        .iter()
        .fold(0u64, |acc, &(u, v)| acc | 1 << pair_bit(perm[u], perm[v]))
}

/// Minimum code over all relabelings; equal iff the graphs are isomorphic.
pub fn canonical_code(g: &Graph) -> u64 {
    let k = g.n();
    assert!(k <= MAX_VERTICES, "canonical forms need ≤ {MAX_VERTICES} vertices");
    (0..k)
        .permutations(k)
        .map(|p| permuted_code(g, &p))
        .min()
        .unwrap_or(0)
}

/// `|Aut(g)|`.
pub fn automorphism_count(g: &Graph) -> u64 {
    let k = g.n();
    let own = code(g);
    (0..k)
        .permutations(k)
        .filter(|p| permuted_code(g, p) == own)
        .count() as u64
}

/// One representative per isomorphism class of `k`-vertex graphs, ordered by
/// canonical code.
pub fn unlabeled_graphs(k: usize) -> Vec<Graph> {
    assert!(k <= 6, "enumerating all labeled graphs needs k ≤ 6");
    let pairs = k * k.saturating_sub(1) / 2;
    let classes: BTreeSet<u64> = (0..1u64 << pairs)
        .map(|c| canonical_code(&from_code(k, c)))
        .collect();
    classes.into_iter().map(|c| from_code(k, c)).collect()
}
