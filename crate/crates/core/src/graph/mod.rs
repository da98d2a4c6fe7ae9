//! Simple graphs, multigraphs and vertex-colored graphs over dense ids `0..n`.
//!
//! Blowups, projections and linkages live in the submodules; everything here
//! is immutable once built and safe to share across threads.

mod blowup;
pub mod canon;
mod coloring;
mod linkage;

pub use blowup::{lift_congested_linkage, Blowup, BlowupVertex};
pub use coloring::{greedy_edge_classes, greedy_edge_color};
pub use linkage::{Linkage, LinkageViolation, Matching};

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Normalizes an unordered pair so that the smaller endpoint comes first.
#[inline]
pub fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Anything that can answer adjacency queries.
///
/// Implemented by materialized [`Graph`]s and by implicit blowups, which can be
/// far too large to build when only a handful of paths need checking.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool;
}

/// Simple undirected graph. Edges are kept in insertion order; adjacency lists
/// are sorted. Equality ignores insertion order.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from an edge list, rejecting loops, out-of-range endpoints
    /// and repeated edges.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::invalid(format!("repeated edge {u}-{v}")));
            }
        }
        Ok(g)
    }

    /// Adds `uv`. Returns `Ok(false)` if the edge was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::invalid(format!(
                "edge {u}-{v} has an endpoint outside 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edges.push(ordered(u, v));
                Ok(true)
            }
        }
    }

    /// Builds a graph from edges known to be distinct, in range and loop-free.
    pub(crate) fn from_distinct_edges(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let edges = edges.into_iter().map(|(u, v)| ordered(u, v)).collect();
        let g = Graph { adj, edges };
        debug_assert!(g.adj.iter().all(|a| a.windows(2).all(|w| w[0] < w[1])));
        g
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in insertion order.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// `d(H) = 2|E|/|V|`; zero for the graph without vertices.
    pub fn average_degree(&self) -> BigRational {
        if self.n() == 0 {
            return BigRational::from_integer(BigInt::from(0));
        }
        BigRational::new(BigInt::from(2 * self.m()), BigInt::from(self.n()))
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j).expect("induced edge");
                }
            }
        }
        g
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length");
        let mut g = Graph::new(self.n());
        for &(u, v) in &self.edges {
            g.add_edge(perm[u], perm[v]).expect("relabeled edge");
        }
        g
    }

    /// Connected components as vertex lists, each sorted, in order of smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// BFS distances from `s`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, s: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    // ---- families -------------------------------------------------------

    pub fn empty(n: usize) -> Graph {
        Graph::new(n)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Path on `n` vertices `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v).unwrap();
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0).unwrap();
        g
    }

    /// Star with center `0` and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v).unwrap();
        }
        g
    }

    /// The `side x side` grid; see [`grid_vertex`] for the id layout.
    pub fn grid(side: usize) -> Graph {
        let mut g = Graph::new(side * side);
        for y in 0..side {
            for x in 0..side {
                if x + 1 < side {
                    g.add_edge(grid_vertex(side, x, y), grid_vertex(side, x + 1, y))
                        .unwrap();
                }
                if y + 1 < side {
                    g.add_edge(grid_vertex(side, x, y), grid_vertex(side, x, y + 1))
                        .unwrap();
                }
            }
        }
        g
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Adjacency for Graph {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_edge(u, v)
    }
}

/// Id of grid cell `(x, y)` (0-indexed) in [`Graph::grid`].
#[inline]
pub fn grid_vertex(side: usize, x: usize, y: usize) -> Vertex {
    y * side + x
}

/// Graph with parallel edges and no loops. Degrees count multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut m = Multigraph::new(n);
        for &(u, v) in edges {
            m.add_edge(u, v)?;
        }
        Ok(m)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::invalid(format!(
                "edge {u}-{v} has an endpoint outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at {u}")));
        }
        self.edges.push(ordered(u, v));
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Multiplicity of the pair `{u, v}`.
    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        let key = ordered(u, v);
        self.edges.iter().filter(|&&e| e == key).count()
    }

    /// Sorted edge multiset, handy for comparisons.
    pub fn sorted_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }
}

impl From<&Graph> for Multigraph {
    fn from(g: &Graph) -> Self {
        Multigraph {
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }
}

/// Graph plus a (not necessarily proper) vertex coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    pub graph: Graph,
    colors: Vec<usize>,
}

impl ColoredGraph {
    pub fn new(graph: Graph, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != graph.n() {
            return Err(Error::invalid(format!(
                "{} colors for {} vertices",
                colors.len(),
                graph.n()
            )));
        }
        Ok(ColoredGraph { graph, colors })
    }

    /// Every vertex colored by its own id.
    pub fn canonical(graph: &Graph) -> Self {
        ColoredGraph {
            graph: graph.clone(),
            colors: (0..graph.n()).collect(),
        }
    }

    #[inline]
    pub fn color(&self, v: Vertex) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Vertices grouped by color, for colors `0..palette`.
    pub fn classes(&self, palette: usize) -> Vec<Vec<Vertex>> {
        let mut classes = vec![Vec::new(); palette];
        for (v, &c) in self.colors.iter().enumerate() {
            if c < palette {
                classes[c].push(v);
            }
        }
        classes
    }

    pub fn palette_size(&self) -> usize {
        self.colors.iter().map(|&c| c + 1).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_edge_rejects_loops_and_range() {
        let mut g = Graph::new(3);
        assert!(g.add_edge(0, 0).is_err());
        assert!(g.add_edge(0, 3).is_err());
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        assert_eq!(g.m(), 1);
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn families_have_expected_sizes() {
        assert_eq!(Graph::complete(5).m(), 10);
        assert_eq!(Graph::cycle(5).m(), 5);
        assert_eq!(Graph::grid(4).m(), 24);
        let p = Graph::petersen();
        assert_eq!((p.n(), p.m(), p.max_degree()), (10, 15, 3));
        assert!((0..10).all(|v| p.degree(v) == 3));
    }

    #[test]
    fn multigraph_keeps_multiplicity() {
        let m = Multigraph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(m.multiplicity(0, 1), 2);
        assert_eq!(m.degrees(), vec![2, 3, 1]);
        assert!(Multigraph::from_edges(2, &[(1, 1)]).is_err());
    }

    #[test]
    fn average_degree_is_exact() {
        let g = Graph::complete(97);
        assert_eq!(g.average_degree(), BigRational::from_integer(96.into()));
        assert_eq!(Graph::new(0).average_degree(), BigRational::from_integer(0.into()));
    }
}
