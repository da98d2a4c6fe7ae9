use crate::error::{Error, Result};
use crate::graph::{ordered, Graph, Vertex};

/// Largest number of vertices `count_3colorings` accepts.
pub const MAX_COLORING_VERTICES: usize = 18;

/// A graph whose edges each demand equal (`E_=`) or different (`E_≠`)
/// values at their endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeAssignmentInstance {
    pub graph: Graph,
    /// Parallel to `graph.edges()`: `true` for a disequality edge.
    neq: Vec<bool>,
}

impl ThreeAssignmentInstance {
    /// `eq` and `neq` must partition the edges of `graph`.
    pub fn new(graph: Graph, eq: &[(Vertex, Vertex)], neq: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut kind = std::collections::HashMap::new();
        for (&e, is_neq) in eq.iter().map(|e| (e, false)).chain(neq.iter().map(|e| (e, true))) {
            let e = ordered(e.0, e.1);
            if !graph.has_edge(e.0, e.1) {
                return Err(Error::invalid(format!("{}-{} is not an edge", e.0, e.1)));
            }
            if kind.insert(e, is_neq).is_some() {
                return Err(Error::invalid(format!("{}-{} is listed twice", e.0, e.1)));
            }
        }
        let neq = graph
            .edges()
            .iter()
            .map(|e| kind.get(e).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::invalid("every edge needs a kind"))?;
        Ok(ThreeAssignmentInstance { graph, neq })
    }

    /// Every edge a disequality: the 3-Coloring instance `G` itself.
    pub fn coloring(graph: Graph) -> Self {
        let neq = vec![true; graph.m()];
        ThreeAssignmentInstance { graph, neq }
    }

    pub fn eq_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.kinds().filter(|&(_, n)| !n).map(|(e, _)| e)
    }

    pub fn neq_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.kinds().filter(|&(_, n)| n).map(|(e, _)| e)
    }

    /// Edges with their kind, `true` meaning disequality.
    pub fn kinds(&self) -> impl Iterator<Item = ((Vertex, Vertex), bool)> + '_ {
        self.graph.edges().iter().copied().zip(self.neq.iter().copied())
    }

    pub fn is_proper(&self, a: &[u8]) -> bool {
        self.kinds().all(|((u, v), neq)| (a[u] != a[v]) == neq)
    }

    /// Contracts `E_=` and keeps `E_≠` between the classes. `None` if some
    /// disequality edge ends up inside one class.
    pub fn contract(&self) -> Option<(Graph, Vec<Vertex>)> {
        let n = self.graph.n();
        let mut parent: Vec<Vertex> = (0..n).collect();
        fn find(p: &mut [Vertex], mut x: Vertex) -> Vertex {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (u, v) in self.eq_edges() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a.max(b)] = a.min(b);
        }
        let mut class = vec![usize::MAX; n];
        let mut classes = 0;
        let mut map = vec![0; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if class[r] == usize::MAX {
                class[r] = classes;
                classes += 1;
            }
            map[v] = class[r];
        }
        let mut g = Graph::new(classes);
        for (u, v) in self.neq_edges() {
            if map[u] == map[v] {
                return None;
            }
            g.add_edge(map[u], map[v]).expect("in range");
        }
        Some((g, map))
    }
}

/// Number of proper 3-colorings, by backtracking per component with the
/// first vertex of each component fixed to one color.
pub fn count_3colorings(g: &Graph) -> Result<u64> {
    if g.n() > MAX_COLORING_VERTICES {
        return Err(Error::envelope(format!(
            "{} vertices, at most {MAX_COLORING_VERTICES} supported",
            g.n()
        )));
    }
    Ok(count_unchecked(g))
}

pub(crate) fn count_unchecked(g: &Graph) -> u64 {
    let mut colors = vec![u8::MAX; g.n()];
    let mut total = 1u64;
    for comp in g.components() {
        // breadth-first order so every later vertex has a colored neighbour
        let order = bfs_order(g, comp[0]);
        colors[order[0]] = 0;
        let c = 3 * extend(g, &order, 1, &mut colors);
        if c == 0 {
            return 0;
        }
        total *= c;
    }
    total
}

fn bfs_order(g: &Graph, root: Vertex) -> Vec<Vertex> {
    let mut seen = vec![false; g.n()];
    let mut order = vec![root];
    seen[root] = true;
    let mut i = 0;
    while i < order.len() {
        for &w in g.neighbors(order[i]) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
        i += 1;
    }
    order
}

fn extend(g: &Graph, order: &[Vertex], i: usize, colors: &mut [u8]) -> u64 {
    if i == order.len() {
        return 1;
    }
    let v = order[i];
    let mut total = 0;
    for c in 0..3 {
        if g.neighbors(v).iter().all(|&w| colors[w] != c) {
            colors[v] = c;
            total += extend(g, order, i + 1, colors);
        }
    }
    colors[v] = u8::MAX;
    total
}

/// Number of proper 3-assignments: contract `E_=`, then count 3-colorings.
pub fn count_3assignments(instance: &ThreeAssignmentInstance) -> Result<u64> {
    match instance.contract() {
        None => Ok(0),
        Some((g, _)) => count_3colorings(&g),
    }
}
