use super::{Matching, Multigraph};

/// Greedy proper edge coloring: edges are scanned in input order and each one
/// takes the lowest-index class where neither endpoint is used yet.
///
/// Uses at most `2Δ(M) − 1` classes.
pub fn greedy_edge_color(m: &Multigraph) -> Vec<Matching> {
    let class = greedy_edge_classes(m);
    let mut classes: Vec<Vec<(usize, usize)>> = vec![Vec::new(); class.iter().map(|&c| c + 1).max().unwrap_or(0)];
    for (&e, &c) in m.edges().iter().zip(&class) {
        classes[c].push(e);
    }
    classes.into_iter().map(Matching::from_trusted).collect()
}

/// The class of each edge of `m` under [`greedy_edge_color`].
pub fn greedy_edge_classes(m: &Multigraph) -> Vec<usize> {
    // busy[v][c]: v already has an edge of class c
    let mut busy: Vec<Vec<bool>> = vec![Vec::new(); m.n()];
    m.edges()
        .iter()
        .map(|&(u, v)| {
            let free = |x: usize, c: usize| !busy[x].get(c).copied().unwrap_or(false);
            let c = (0..).find(|&c| free(u, c) && free(v, c)).unwrap();
            for x in [u, v] {
                if busy[x].len() <= c {
                    busy[x].resize(c + 1, false);
                }
                busy[x][c] = true;
            }
            c
        })
        .collect()
}
