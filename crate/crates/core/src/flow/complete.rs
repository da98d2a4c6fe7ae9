use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{ordered, Multigraph, Vertex};

/// Routes each edge of `m` in `K_t`, `t = |V(m)|`, so that every edge of
/// `K_t` lies on at most `18q` paths. Paths have one or two edges and come
/// back in the order of `m.edges()`.
///
/// For `t ≤ 12` every edge is routed directly. Otherwise every edge `uv` goes
/// through the lowest-index middle vertex `x` for which `ux` and `xv` still
/// have room and `x` is the middle of fewer than `qt` paths.
pub fn route_in_complete(m: &Multigraph, q: usize) -> Result<Vec<Vec<Vertex>>> {
    let t = m.n();
    if m.max_degree() > q * t {
        return Err(Error::invalid(format!(
            "maximum degree {} exceeds qt = {}",
            m.max_degree(),
            q * t
        )));
    }
    if t <= 12 {
        return Ok(m.edges().iter().map(|&(u, v)| vec![u, v]).collect());
    }
    let mut edge_load: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    let mut middle_load = vec![0usize; t];
    let mut out = Vec::with_capacity(m.m());
    for &(u, v) in m.edges() {
        let room = |a, b| edge_load.get(&ordered(a, b)).copied().unwrap_or(0) < 18 * q;
        let x = (0..t)
            .find(|&x| x != u && x != v && middle_load[x] < q * t && room(u, x) && room(x, v))
            .ok_or_else(|| Error::verification(format!("no middle vertex left for {u}-{v}")))?;
        *edge_load.entry(ordered(u, x)).or_default() += 1;
        *edge_load.entry(ordered(x, v)).or_default() += 1;
        middle_load[x] += 1;
        out.push(vec![u, x, v]);
    }
    Ok(out)
}

/// Largest number of paths on one edge of `K_t` and largest number of paths
/// with the same middle vertex.
pub fn complete_loads(paths: &[Vec<Vertex>], t: usize) -> (usize, usize) {
    let mut edge_load: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    let mut middle = vec![0usize; t];
    for p in paths {
        for e in p.windows(2) {
            *edge_load.entry(ordered(e[0], e[1])).or_default() += 1;
        }
        for &x in &p[1..p.len() - 1] {
            middle[x] += 1;
        }
    }
    (
        edge_load.into_values().max().unwrap_or(0),
        middle.into_iter().max().unwrap_or(0),
    )
}
