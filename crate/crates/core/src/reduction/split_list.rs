use std::collections::HashMap;

use rayon::prelude::*;

use super::{EmbeddedInstance, ThreeAssignmentInstance};
use crate::error::{Error, Result};
use crate::graph::{BlowupVertex, ColoredGraph, Graph, Vertex};

/// Most vertices of `G′` one block may hold (`3^9` assignments per block).
pub const MAX_BLOCK: usize = 9;

/// The split-and-list graph `X`: one vertex per proper 3-assignment of each
/// block `G′[V_w]`, colored `w`, with edges between compatible assignments
/// of blocks adjacent in `H`.
#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    pub colored: ColoredGraph,
    /// `X_w` as vertex ids of `colored`, for each `w ∈ V(H)`.
    pub parts: Vec<Vec<Vertex>>,
    /// `V_w`, the vertices of `G′` in block `w`.
    pub blocks: Vec<Vec<Vertex>>,
    /// Values of each vertex of `X`, parallel to its block.
    pub assignments: Vec<Vec<u8>>,
}

impl CompatibilityGraph {
    pub fn vertex_count(&self) -> usize {
        self.colored.graph.n()
    }
}

impl EmbeddedInstance {
    pub fn split_list(&self) -> Result<CompatibilityGraph> {
        split_list(&self.base, &self.instance, &self.placement)
    }
}

/// Lists the proper assignments of every block and joins compatible ones.
/// `placement` puts each vertex of `G′` into a block of `H`; `G′` must be
/// a subgraph of the blowup, i.e. every edge stays in a block or joins
/// blocks adjacent in `H`.
pub fn split_list(
    h: &Graph,
    g: &ThreeAssignmentInstance,
    placement: &[BlowupVertex],
) -> Result<CompatibilityGraph> {
    let k = h.n();
    if placement.len() != g.graph.n() {
        return Err(Error::invalid("placement must cover every vertex of G′"));
    }
    let mut blocks = vec![Vec::new(); k];
    let mut slot = vec![0; g.graph.n()];
    for (v, p) in placement.iter().enumerate() {
        if p.base >= k {
            return Err(Error::invalid(format!("vertex {v} is placed outside H")));
        }
        slot[v] = blocks[p.base].len();
        blocks[p.base].push(v);
    }
    if let Some(b) = blocks.iter().find(|b| b.len() > MAX_BLOCK) {
        return Err(Error::envelope(format!(
            "a block holds {} vertices, at most {MAX_BLOCK} supported",
            b.len()
        )));
    }

    // constraints inside each block and across each pair of blocks
    let mut inner = vec![Vec::new(); k];
    let mut cross: HashMap<(Vertex, Vertex), Vec<(usize, usize, bool)>> = HashMap::new();
    for ((u, v), neq) in g.kinds() {
        let (a, b) = (placement[u].base, placement[v].base);
        if a == b {
            inner[a].push((slot[u], slot[v], neq));
        } else if !h.has_edge(a, b) {
            return Err(Error::invalid(format!("edge {u}-{v} joins blocks {a} and {b}, not adjacent in H")));
        } else if a < b {
            cross.entry((a, b)).or_default().push((slot[u], slot[v], neq));
        } else {
            cross.entry((b, a)).or_default().push((slot[v], slot[u], neq));
        }
    }

    let lists: Vec<Vec<Vec<u8>>> = (0..k)
        .into_par_iter()
        .map(|w| proper_assignments(blocks[w].len(), &inner[w]))
        .collect();
    let mut parts = Vec::with_capacity(k);
    let mut colors = Vec::new();
    let mut assignments = Vec::new();
    for (w, list) in lists.into_iter().enumerate() {
        parts.push((assignments.len()..assignments.len() + list.len()).collect::<Vec<_>>());
        colors.extend(std::iter::repeat_n(w, list.len()));
        assignments.extend(list);
    }

    let edges: Vec<(Vertex, Vertex)> = h
        .edges()
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let rules = cross.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[]);
            compatible_pairs(&parts[a], &parts[b], &assignments, rules)
        })
        .collect();
    let graph = Graph::from_distinct_edges(assignments.len(), edges);
    Ok(CompatibilityGraph { colored: ColoredGraph::new(graph, colors)?, parts, blocks, assignments })
}

/// All `a ∈ [3]^n` satisfying `(i, j, neq)`: `a_i ≠ a_j` if `neq`, else equal.
fn proper_assignments(n: usize, rules: &[(usize, usize, bool)]) -> Vec<Vec<u8>> {
    let total = 3usize.pow(n as u32);
    (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = (code % 3) as u8;
                    code /= 3;
                    d
                })
                .collect::<Vec<u8>>()
        })
        .filter(|a| rules.iter().all(|&(i, j, neq)| (a[i] != a[j]) == neq))
        .collect()
}

/// Pairs of `left × right` whose assignments satisfy the cross rules. Both
/// sides are bucketed by their values on the constrained slots first.
fn compatible_pairs(
    left: &[Vertex],
    right: &[Vertex],
    assignments: &[Vec<u8>],
    rules: &[(usize, usize, bool)],
) -> Vec<(Vertex, Vertex)> {
    let bucket = |side: &[Vertex], pick: &dyn Fn(&(usize, usize, bool)) -> usize| {
        let mut out: HashMap<Vec<u8>, Vec<Vertex>> = HashMap::new();
        for &x in side {
            out.entry(rules.iter().map(|r| assignments[x][pick(r)]).collect()).or_default().push(x);
        }
        out
    };
    let lb = bucket(left, &|r| r.0);
    let rb = bucket(right, &|r| r.1);
    let mut out = Vec::new();
    for (ka, xs) in &lb {
        for (kb, ys) in &rb {
            let ok = rules.iter().enumerate().all(|(i, &(_, _, neq))| (ka[i] != kb[i]) == neq);
            if ok {
                out.extend(xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))));
            }
        }
    }
    out
}
