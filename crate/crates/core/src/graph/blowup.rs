use std::collections::HashMap;

use super::{Adjacency, Graph, Linkage, Matching, Multigraph, Vertex};
use crate::error::{Error, Result};

/// A vertex `v^(i)` of `H ⊗ J_t`. Clones are 0-indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlowupVertex {
    pub base: Vertex,
    pub clone: usize,
}

/// The blowup `H ⊗ J_t`, kept implicit.
///
/// Vertex `v^(i)` has id `v * t + i`. Call [`Blowup::graph`] to materialize it.
#[derive(Clone, Debug)]
pub struct Blowup<'h> {
    base: &'h Graph,
    t: usize,
}

impl<'h> Blowup<'h> {
    pub fn new(base: &'h Graph, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::invalid("blowup order must be at least 1"));
        }
        Ok(Blowup { base, t })
    }

    pub fn base(&self) -> &'h Graph {
        self.base
    }

    #[inline]
    pub fn t(&self) -> usize {
        self.t
    }

    #[inline]
    pub fn id(&self, v: BlowupVertex) -> Vertex {
        debug_assert!(v.clone < self.t && v.base < self.base.n());
        v.base * self.t + v.clone
    }

    #[inline]
    pub fn vertex(&self, id: Vertex) -> BlowupVertex {
        BlowupVertex {
            base: id / self.t,
            clone: id % self.t,
        }
    }

    #[inline]
    pub fn clone_of(&self, base: Vertex, clone: usize) -> Vertex {
        self.id(BlowupVertex { base, clone })
    }

    #[inline]
    pub fn base_of(&self, id: Vertex) -> Vertex {
        id / self.t
    }

    /// Materializes `H ⊗ J_t`: `k·t` vertices, `t²|E(H)| + k·t(t−1)/2` edges.
    pub fn graph(&self) -> Graph {
        let t = self.t;
        let mut g = Graph::new(self.base.n() * t);
        for v in 0..self.base.n() {
            for i in 0..t {
                for j in i + 1..t {
                    g.add_edge(v * t + i, v * t + j).unwrap();
                }
            }
        }
        for &(u, v) in self.base.edges() {
            for i in 0..t {
                for j in 0..t {
                    g.add_edge(u * t + i, v * t + j).unwrap();
                }
            }
        }
        g
    }

    /// H-projection of a multigraph over blowup ids. Intra-block edges vanish.
    pub fn project(&self, edges: &[(Vertex, Vertex)]) -> Multigraph {
        let mut m = Multigraph::new(self.base.n());
        for &(a, b) in edges {
            let (u, v) = (self.base_of(a), self.base_of(b));
            if u != v {
                m.add_edge(u, v).expect("projected endpoints are in range");
            }
        }
        m
    }
}

impl Adjacency for Blowup<'_> {
    fn vertex_count(&self) -> usize {
        self.base.n() * self.t
    }

    fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        let n = self.vertex_count();
        if a == b || a >= n || b >= n {
            return false;
        }
        let (u, v) = (self.base_of(a), self.base_of(b));
        u == v || self.base.has_edge(u, v)
    }
}

/// Turns a `q`-congested `π(M)`-linkage `Q` in `H` into an uncongested
/// `M`-linkage in `H ⊗ J_{2q}`.
///
/// `matching` lives in `H ⊗ J_q`; its endpoints keep their clone index, and the
/// `i`-th path routed through `w` as an internal vertex uses `w^(q+i)`.
/// Paths of `Q` are paired with matching edges by their base endpoints.
pub fn lift_congested_linkage(
    h: &Graph,
    q: usize,
    matching: &Matching,
    projected: &Linkage,
) -> Result<Linkage> {
    let small = Blowup::new(h, q)?;
    let big = Blowup::new(h, 2 * q)?;
    if projected.max_congestion() > q {
        return Err(Error::invalid(format!(
            "linkage is {}-congested, more than q = {q}",
            projected.max_congestion()
        )));
    }
    let n = h.n() * q;
    if let Some(&(a, b)) = matching.edges().iter().find(|&&(a, b)| a >= n || b >= n) {
        return Err(Error::invalid(format!(
            "matching edge {a}-{b} is outside H ⊗ J_{q}"
        )));
    }

    let mut pool: HashMap<(Vertex, Vertex), Vec<&[Vertex]>> = HashMap::new();
    for (&(u, v), path) in projected.iter().rev() {
        pool.entry(super::ordered(u, v)).or_default().push(path);
    }

    let mut used = vec![0usize; h.n()];
    let mut out = Linkage::new();
    for &(a, b) in matching.edges() {
        let (x, y) = (small.vertex(a), small.vertex(b));
        let lift = |v: BlowupVertex| big.clone_of(v.base, v.clone);
        if x.base == y.base {
            out.push((lift(x), lift(y)), vec![lift(x), lift(y)]);
            continue;
        }
        let path = pool
            .get_mut(&super::ordered(x.base, y.base))
            .and_then(Vec::pop)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "no path for projected edge {}-{}",
                    x.base, y.base
                ))
            })?;
        let forward = path[0] == x.base;
        let mut lifted = Vec::with_capacity(path.len());
        lifted.push(lift(x));
        let inner = &path[1..path.len() - 1];
        let mut step = |w: Vertex| {
            let c = q + used[w];
            used[w] += 1;
            lifted.push(big.clone_of(w, c));
        };
        if forward {
            inner.iter().copied().for_each(&mut step);
        } else {
            inner.iter().rev().copied().for_each(&mut step);
        }
        lifted.push(lift(y));
        out.push((lift(x), lift(y)), lifted);
    }
    if let Some((k, _)) = pool.iter().find(|(_, v)| !v.is_empty()) {
        return Err(Error::invalid(format!(
            "linkage has a path for {}-{} that the matching does not project to",
            k.0, k.1
        )));
    }
    Ok(out)
}
