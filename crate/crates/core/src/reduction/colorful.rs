use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph, Vertex};

/// Number of maps `φ: V(H) → V(X)` with `color(φ(w)) = w` that send edges to
/// edges, i.e. colorful copies of `H` in `X`.
///
/// Vertices of `H` are added one at a time in a connectivity-aware order
/// that keeps few placed vertices with unplaced neighbours.
/// `budget` bounds the number of candidate checks.
pub fn count_colorful_sub(h: &Graph, x: &ColoredGraph, budget: u64) -> Result<u64> {
    count_colorful_sub_in_order(h, x, &elimination_order(h), budget)
}

/// [`count_colorful_sub`] adding the vertices of `H` in the given order.
///
/// Partial maps are merged by their values on the frontier, the placed
/// vertices that still have unplaced neighbours, so the work depends on the
/// frontier rather than on the number of partial maps. Candidates for a
/// vertex come from the neighbourhood of the placed neighbour whose image
/// has the fewest neighbours of the right color.
pub fn count_colorful_sub_in_order(h: &Graph, x: &ColoredGraph, order: &[Vertex], budget: u64) -> Result<u64> {
    let mut check = order.to_vec();
    check.sort_unstable();
    if check != (0..h.n()).collect::<Vec<_>>() {
        return Err(Error::invalid("order must list every vertex of H once"));
    }
    let classes = x.classes(h.n());
    let index = ColorIndex::new(x);
    let mut placed = vec![false; h.n()];
    let mut frontier: Vec<Vertex> = Vec::new();
    let mut states: HashMap<Vec<Vertex>, u64> = HashMap::from([(Vec::new(), 1)]);
    let mut work = 0u64;
    for &w in order {
        placed[w] = true;
        let anchors: Vec<usize> = (0..frontier.len()).filter(|&i| h.has_edge(frontier[i], w)).collect();
        let mut grown = frontier.clone();
        grown.push(w);
        let keep: Vec<usize> = (0..grown.len())
            .filter(|&i| h.neighbors(grown[i]).iter().any(|&y| !placed[y]))
            .collect();

        let mut next: HashMap<Vec<Vertex>, u64> = HashMap::new();
        for (state, count) in states {
            let pool: &[Vertex] = anchors
                .iter()
                .map(|&a| index.neighbors(state[a], w))
                .min_by_key(|p| p.len())
                .unwrap_or(&classes[w]);
            for &c in pool {
                work += 1;
                if work > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                if !anchors.iter().all(|&a| x.graph.has_edge(c, state[a])) {
                    continue;
                }
                let key: Vec<Vertex> = keep.iter().map(|&i| if i < state.len() { state[i] } else { c }).collect();
                let slot = next.entry(key).or_insert(0);
                *slot = slot
                    .checked_add(count)
                    .ok_or_else(|| Error::envelope("colorful count overflows 64 bits"))?;
            }
        }
        states = next;
        frontier = keep.iter().map(|&i| grown[i]).collect();
        if states.is_empty() {
            return Ok(0);
        }
    }
    Ok(states.values().sum())
}

/// Neighbourhoods sorted by color, so that the neighbours of one color form
/// a slice.
struct ColorIndex<'a> {
    x: &'a ColoredGraph,
    adj: Vec<Vec<Vertex>>,
}

impl<'a> ColorIndex<'a> {
    fn new(x: &'a ColoredGraph) -> Self {
        let adj = (0..x.graph.n())
            .map(|v| {
                let mut a = x.graph.neighbors(v).to_vec();
                a.sort_by_key(|&c| (x.color(c), c));
                a
            })
            .collect();
        ColorIndex { x, adj }
    }

    fn neighbors(&self, v: Vertex, color: usize) -> &[Vertex] {
        let a = &self.adj[v];
        let lo = a.partition_point(|&c| self.x.color(c) < color);
        let hi = a.partition_point(|&c| self.x.color(c) <= color);
        &a[lo..hi]
    }
}

/// Repeatedly takes the vertex that leaves the smallest frontier, preferring
/// vertices with many placed neighbours.
fn elimination_order(h: &Graph) -> Vec<Vertex> {
    let n = h.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let frontier_after = |w: Vertex| {
            (0..n)
                .filter(|&y| placed[y] || y == w)
                .filter(|&y| h.neighbors(y).iter().any(|&z| !placed[z] && z != w))
                .count()
        };
        let w = (0..n)
            .filter(|&w| !placed[w])
            .min_by_key(|&w| {
                let near = h.neighbors(w).iter().filter(|&&y| placed[y]).count();
                (frontier_after(w), std::cmp::Reverse(near), w)
            })
            .expect("an unplaced vertex");
        placed[w] = true;
        order.push(w);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    /// Every tuple of the product of color classes, checked edge by edge.
    fn naive(h: &Graph, x: &ColoredGraph) -> u64 {
        let classes = x.classes(h.n());
        if h.n() == 0 {
            return 1;
        }
        classes
            .iter()
            .map(|c| c.iter().copied())
            .multi_cartesian_product()
            .filter(|phi| h.edges().iter().all(|&(a, b)| x.graph.has_edge(phi[a], phi[b])))
            .count() as u64
    }

    #[test]
    fn examples() {
        let h = Graph::cycle(4);
        assert_eq!(count_colorful_sub(&h, &ColoredGraph::canonical(&h), 100).unwrap(), 1);
        let mut g = Graph::complete(3);
        g.add_vertex();
        let x = ColoredGraph::new(g, vec![0, 1, 2, 0]).unwrap();
        assert_eq!(count_colorful_sub(&Graph::complete(4), &x, 100).unwrap(), 0);
        assert!(count_colorful_sub(&Graph::complete(2), &ColoredGraph::canonical(&Graph::complete(2)), 0).is_err());
    }

    fn colored(k: usize) -> impl Strategy<Value = (Graph, ColoredGraph)> {
        let hpairs: Vec<_> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
        (4usize..=10).prop_flat_map(move |n| {
            let xpairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            (
                proptest::sample::subsequence(hpairs.clone(), 0..=hpairs.len()),
                proptest::sample::subsequence(xpairs.clone(), 0..=xpairs.len()),
                proptest::collection::vec(0..k, n),
            )
                .prop_map(move |(he, xe, colors)| {
                    let h = Graph::from_edges(k, &he).unwrap();
                    let x = ColoredGraph::new(Graph::from_edges(n, &xe).unwrap(), colors).unwrap();
                    (h, x)
                })
        })
    }

    proptest! {
        #[test]
        fn agrees_with_product_enumeration((h, x) in (2usize..=4).prop_flat_map(colored)) {
            prop_assert_eq!(count_colorful_sub(&h, &x, u64::MAX).unwrap(), naive(&h, &x));
            let reversed: Vec<_> = (0..h.n()).rev().collect();
            prop_assert_eq!(count_colorful_sub_in_order(&h, &x, &reversed, u64::MAX).unwrap(), naive(&h, &x));
        }
    }
}
