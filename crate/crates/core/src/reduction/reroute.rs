use serde::Serialize;

use super::ThreeAssignmentInstance;
use crate::error::{Error, Result};
use crate::graph::{
    greedy_edge_classes, Adjacency, Blowup, BlowupVertex, Graph, Linkage, Matching, Multigraph, Vertex,
};
use crate::linkage::LinkedSetWitness;

/// A 3-Assignment instance `G′` drawn inside `H ⊗ J_t` as the image of a
/// topological minor model of `G`.
///
/// Vertices `0..n` of `G′` are the vertices of `G`; the rest are path
/// interiors.
#[derive(Clone, Debug)]
pub struct EmbeddedInstance {
    pub instance: ThreeAssignmentInstance,
    pub base: Graph,
    pub t: usize,
    pub placement: Vec<BlowupVertex>,
    /// One path per edge of `G`, in `G′` ids.
    pub minor_model: Linkage,
    pub layout: Layout,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Layout {
    /// Copies of the witness set holding the vertices of `G`.
    pub copies: usize,
    /// Matchings routed through the witness, one clone layer each.
    pub matchings: usize,
    /// Clones per layer (the witness's `q`).
    pub q: usize,
    /// `G` placed inside a single block because the witness set is empty.
    pub dummy: bool,
}

impl EmbeddedInstance {
    pub fn host(&self) -> Blowup<'_> {
        Blowup::new(&self.base, self.t).expect("t ≥ 1")
    }

    /// Blocks by breadth-first distance in `H` from the blocks holding
    /// `V(G)`, nearest first; unreachable blocks come last.
    pub fn block_order(&self, n: usize) -> Vec<Vertex> {
        let k = self.base.n();
        let mut dist = vec![usize::MAX; k];
        let mut queue = std::collections::VecDeque::new();
        for v in &self.placement[..n] {
            if dist[v.base] != 0 {
                dist[v.base] = 0;
                queue.push_back(v.base);
            }
        }
        while let Some(a) = queue.pop_front() {
            for &b in self.base.neighbors(a) {
                if dist[b] == usize::MAX {
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        let mut order: Vec<Vertex> = (0..k).collect();
        order.sort_by_key(|&w| (dist[w], w));
        order
    }

    /// Number of `G′` vertices in each block.
    pub fn occupancy(&self) -> Vec<usize> {
        let mut occ = vec![0; self.base.n()];
        for v in &self.placement {
            occ[v.base] += 1;
        }
        occ
    }

    /// Checks that `G′` is a subgraph of `H ⊗ J_t`, that the minor model is
    /// a topological `G`-minor of `G′` covering all of it, and that every
    /// path carries exactly one disequality edge.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let gp = &self.instance.graph;
        let host = self.host();
        let ids: Vec<Vertex> = self
            .placement
            .iter()
            .map(|&v| {
                if v.base >= self.base.n() || v.clone >= self.t {
                    Err(Error::verification(format!("{v:?} is outside H ⊗ J_{}", self.t)))
                } else {
                    Ok(host.id(v))
                }
            })
            .collect::<Result<_>>()?;
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::verification("two vertices of G′ share a host vertex"));
        }
        if let Some(&(u, v)) = gp.edges().iter().find(|&&(u, v)| !host.adjacent(ids[u], ids[v])) {
            return Err(Error::verification(format!("edge {u}-{v} of G′ is not in the blowup")));
        }
        self.minor_model.check_topological_minor(gp, g.edges())?;
        let mut covered = 0;
        for (_, path) in self.minor_model.iter() {
            let neq = path
                .windows(2)
                .filter(|e| self.instance.neq_edges().any(|f| f == crate::graph::ordered(e[0], e[1])))
                .count();
            if neq != 1 {
                return Err(Error::verification(format!("path {path:?} has {neq} disequality edges")));
            }
            covered += path.len() - 1;
        }
        if covered != gp.m() {
            return Err(Error::verification("G′ has edges outside the minor model"));
        }
        Ok(())
    }
}

/// Embeds `G` (maximum degree 4) into a blowup of the witness's pattern.
///
/// `V(G)` is spread over `c = ⌈n/|X|⌉` copies of `X`, one clone layer per
/// copy. Vertices sharing a position of `X` are joined directly, since their
/// host vertices are clones of one base vertex. The remaining edges, projected
/// onto `X`, are split into matchings by the greedy edge coloring; matching
/// `i` is routed by the witness and its interiors go to layer `c + i`, so
/// `t = q·(c + r)`. Each routed path is then shortcut along its own vertices.
/// The middle edge of every path is the disequality edge, so each half of a
/// path is an equality chain hanging off its own endpoint.
pub fn reroute(g: &Graph, witness: &LinkedSetWitness, budget: u64) -> Result<EmbeddedInstance> {
    if g.max_degree() > 4 {
        return Err(Error::invalid(format!("maximum degree {} exceeds 4", g.max_degree())));
    }
    if !witness.is_trusted() {
        return Err(Error::invalid("witness is neither certified nor analytic"));
    }
    let (n, x, q) = (g.n(), witness.set.len(), witness.q);
    if x == 0 {
        return Ok(dummy(g, &witness.base));
    }
    let copies = n.div_ceil(x).max(1);
    let (pos, copy) = place(g, x, copies);
    let set_ids = witness.set_ids();
    let small = witness.blowup();

    let mut projected = Multigraph::new(x);
    let mut routed_edges = Vec::new();
    let mut direct_edges = Vec::new();
    for &(u, v) in g.edges() {
        if pos[u] == pos[v] {
            direct_edges.push((u, v));
        } else {
            projected.add_edge(pos[u], pos[v])?;
            routed_edges.push((u, v));
        }
    }
    let class = greedy_edge_classes(&projected);
    let layers = class.iter().map(|&c| c + 1).max().unwrap_or(0);
    let t = q * (copies + layers);

    let mut placement: Vec<BlowupVertex> = (0..n)
        .map(|v| {
            let home = witness.set[pos[v]];
            BlowupVertex { base: home.base, clone: copy[v] * q + home.clone }
        })
        .collect();
    let mut gp = Graph::new(n);
    let mut paths: Vec<Option<Vec<Vertex>>> = vec![None; g.m()];
    let edge_index = |u: Vertex, v: Vertex| {
        g.edges().iter().position(|&e| e == crate::graph::ordered(u, v)).expect("edge of G")
    };
    for &(u, v) in &direct_edges {
        paths[edge_index(u, v)] = Some(vec![u, v]);
    }

    let mut pending: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); layers];
    for (&e, &c) in routed_edges.iter().zip(&class) {
        pending[c].push(e);
    }
    for (layer, edges) in pending.iter().enumerate() {
        let m = Matching::new(edges.iter().map(|&(u, v)| (set_ids[pos[u]], set_ids[pos[v]])).collect())?;
        let linkage = witness.route(&m, budget).map_err(|e| e.in_stage("route"))?;
        for &(u, v) in edges {
            let route = linkage
                .path_for(set_ids[pos[u]], set_ids[pos[v]])
                .ok_or_else(|| Error::verification("witness linkage misses a pair"))?;
            let interior: Vec<BlowupVertex> = route[1..route.len() - 1]
                .iter()
                .map(|&h| {
                    let hv = small.vertex(h);
                    BlowupVertex { base: hv.base, clone: (copies + layer) * q + hv.clone }
                })
                .collect();
            let walk: Vec<BlowupVertex> = std::iter::once(placement[u])
                .chain(interior)
                .chain(std::iter::once(placement[v]))
                .collect();
            let kept = shortcut(&witness.base, &walk);
            let mut path = vec![u];
            for &bv in &kept[1..kept.len() - 1] {
                placement.push(bv);
                path.push(gp.add_vertex());
            }
            path.push(v);
            paths[edge_index(u, v)] = Some(path);
        }
    }

    let mut model = Linkage::new();
    let mut neq = Vec::new();
    let mut eq = Vec::new();
    for (&(u, v), path) in g.edges().iter().zip(paths) {
        let path = path.expect("every edge is routed");
        let middle = (path.len() - 2) / 2;
        for (i, e) in path.windows(2).enumerate() {
            gp.add_edge(e[0], e[1])?;
            if i == middle { neq.push((e[0], e[1])) } else { eq.push((e[0], e[1])) }
        }
        model.push((u, v), path);
    }
    Ok(EmbeddedInstance {
        instance: ThreeAssignmentInstance::new(gp, &eq, &neq)?,
        base: witness.base.clone(),
        t,
        placement,
        minor_model: model,
        layout: Layout { copies, matchings: layers, q, dummy: false },
    })
}

/// Groups `V(G)` into `x` positions with room for `copies` vertices each,
/// putting a vertex where most of its already placed neighbours are.
fn place(g: &Graph, x: usize, copies: usize) -> (Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    let mut copy = vec![0; n];
    let mut fill = vec![0usize; x];
    for v in 0..n {
        let best = (0..x)
            .filter(|&p| fill[p] < copies)
            .max_by_key(|&p| {
                let near = g.neighbors(v).iter().filter(|&&w| pos[w] == p).count();
                (near, std::cmp::Reverse(p))
            })
            .expect("enough room");
        pos[v] = best;
        copy[v] = fill[best];
        fill[best] += 1;
    }
    (pos, copy)
}

/// Keeps the first and last vertex of `walk` and greedily jumps to the
/// furthest later vertex adjacent to the current one in the blowup.
fn shortcut(h: &Graph, walk: &[BlowupVertex]) -> Vec<BlowupVertex> {
    let near = |a: BlowupVertex, b: BlowupVertex| a.base == b.base || h.has_edge(a.base, b.base);
    let mut out = vec![walk[0]];
    let mut i = 0;
    while i + 1 < walk.len() {
        let j = (i + 1..walk.len()).rev().find(|&j| near(walk[i], walk[j])).expect("consecutive vertices are adjacent");
        out.push(walk[j]);
        i = j;
    }
    out
}

/// `G` placed in block 0 of `H ⊗ J_n`, all edges disequalities.
fn dummy(g: &Graph, h: &Graph) -> EmbeddedInstance {
    let mut model = Linkage::new();
    for &(u, v) in g.edges() {
        model.push((u, v), vec![u, v]);
    }
    EmbeddedInstance {
        instance: ThreeAssignmentInstance::coloring(g.clone()),
        base: h.clone(),
        t: g.n().max(1),
        placement: (0..g.n()).map(|clone| BlowupVertex { base: 0, clone }).collect(),
        minor_model: model,
        layout: Layout { copies: 1, matchings: 0, q: 1, dummy: true },
    }
}
