//! Linkages among the diagonal of the `ℓ × ℓ` grid.
//!
//! The pair `(a,a)(b,b)` with `a < b` runs right along row `a` to `(b,a)` and
//! then up column `b`. Row `a` is only used by the pair starting at `a` and
//! column `b` only by the pair ending at `b`, so every cell lies on at most
//! one horizontal and one vertical segment.

use crate::error::{Error, Result};
use crate::graph::{grid_vertex, Blowup, Graph, Linkage, Matching, Vertex};

/// Diagonal index of `v`, if `v = (i, i)`.
fn diagonal_index(side: usize, v: Vertex) -> Option<usize> {
    let (x, y) = (v % side, v / side);
    (x == y && v < side * side).then_some(x)
}

fn diagonal_pairs(side: usize, m: &Matching) -> Result<Vec<(usize, usize)>> {
    m.edges()
        .iter()
        .map(|&(u, v)| match (diagonal_index(side, u), diagonal_index(side, v)) {
            (Some(a), Some(b)) => Ok((a.min(b), a.max(b))),
            _ => Err(Error::invalid(format!(
                "{u}-{v} does not join two diagonal cells of the {side}×{side} grid"
            ))),
        })
        .collect()
}

fn l_path(side: usize, a: usize, b: usize) -> Vec<Vertex> {
    let mut path: Vec<Vertex> = (a..=b).map(|x| grid_vertex(side, x, a)).collect();
    path.extend((a + 1..=b).map(|y| grid_vertex(side, b, y)));
    path
}

/// The 2-congested linkage in `⊞_side` for a matching on diagonal cells.
pub fn grid_diagonal_linkage(side: usize, m: &Matching) -> Result<Linkage> {
    let pairs = diagonal_pairs(side, m)?;
    let mut linkage = Linkage::new();
    for ((u, v), (a, b)) in m.edges().iter().zip(pairs) {
        let mut path = l_path(side, a, b);
        if grid_vertex(side, a, a) != *u {
            path.reverse();
        }
        linkage.push((*u, *v), path);
    }
    Ok(linkage)
}

/// The uncongested linkage in `⊞_side ⊗ J_2`. Endpoints stay in clone 0;
/// a cell already used by an earlier path is visited in clone 1.
pub fn grid_blowup2_linkage(side: usize, m: &Matching) -> Result<Linkage> {
    let flat = grid_diagonal_linkage(side, m)?;
    let grid = Graph::grid(side);
    let b = Blowup::new(&grid, 2)?;
    let mut visits = vec![0usize; side * side];
    let mut linkage = Linkage::new();
    for ((u, v), path) in flat.into_paths() {
        let lifted = path
            .iter()
            .map(|&w| {
                let c = visits[w];
                visits[w] += 1;
                b.clone_of(w, c)
            })
            .collect();
        linkage.push((b.clone_of(u, 0), b.clone_of(v, 0)), lifted);
    }
    Ok(linkage)
}

/// Size `ℓ′ ∈ {ℓ−1, ℓ}` of the even diagonal prefix used as a linked set.
pub fn even_diagonal(side: usize) -> usize {
    side - side % 2
}
