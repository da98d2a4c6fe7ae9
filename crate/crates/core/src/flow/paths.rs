use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// All simple `u`–`v` paths, in depth-first order over sorted adjacency.
/// For `u = v` the only path is `(u)`. Fails once more than `cap` paths exist.
pub fn enumerate_paths(g: &Graph, u: Vertex, v: Vertex, cap: usize) -> Result<Vec<Vec<Vertex>>> {
    if u >= g.n() || v >= g.n() {
        return Err(Error::invalid(format!("{u} or {v} is not a vertex")));
    }
    if u == v {
        return Ok(vec![vec![u]]);
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    let mut path = vec![u];
    on_path[u] = true;
    walk(g, v, cap, &mut path, &mut on_path, &mut out)?;
    Ok(out)
}

fn walk(
    g: &Graph,
    target: Vertex,
    cap: usize,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<Vertex>>,
) -> Result<()> {
    let head = *path.last().unwrap();
    for &w in g.neighbors(head) {
        if on_path[w] {
            continue;
        }
        path.push(w);
        if w == target {
            if out.len() == cap {
                return Err(Error::envelope(format!(
                    "more than {cap} simple paths between {} and {target}",
                    path[0]
                )));
            }
            out.push(path.clone());
        } else {
            on_path[w] = true;
            walk(g, target, cap, path, on_path, out)?;
            on_path[w] = false;
        }
        path.pop();
    }
    Ok(())
}
