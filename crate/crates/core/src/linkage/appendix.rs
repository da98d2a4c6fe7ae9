//! The exhaustive linkage procedure for tiny blowups.
//!
//! Any uncongested linkage in `H ⊗ J_t` can be shortcut so that a pair inside
//! one block uses its direct edge and every other path visits each block at
//! most once. Such a linkage is fixed, up to clone choice, by one simple
//! `H`-path per projected pair, and it can be realized iff every block has
//! enough spare clones for the paths passing through it.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::flow::enumerate_paths;
use crate::graph::{ordered, Blowup, Graph, Linkage, Matching, Vertex};

pub const MAX_BASE_VERTICES: usize = 4;
pub const MAX_ORDER: usize = 2;

fn check_envelope(h: &Graph, t: usize) -> Result<()> {
    if h.n() > MAX_BASE_VERTICES || t > MAX_ORDER || t == 0 {
        return Err(Error::envelope(format!(
            "exhaustive oracle supports k ≤ {MAX_BASE_VERTICES} and 1 ≤ t ≤ {MAX_ORDER}, got k = {}, t = {t}",
            h.n()
        )));
    }
    Ok(())
}

/// Decides whether `H ⊗ J_t` contains an uncongested `M`-linkage.
pub fn appendix_linkage_oracle(h: &Graph, t: usize, m: &Matching) -> Result<bool> {
    Ok(appendix_linkage(h, t, m)?.is_some())
}

/// Like [`appendix_linkage_oracle`], but returns the linkage it found.
///
/// Projected pairs are grouped; for a pair of multiplicity `c` every multiset
/// of `c` paths from `𝒫_{u,v}` is tried, and the combination is accepted
/// once no block is oversubscribed.
pub fn appendix_linkage(h: &Graph, t: usize, m: &Matching) -> Result<Option<Linkage>> {
    check_envelope(h, t)?;
    let b = Blowup::new(h, t)?;
    let n = h.n() * t;
    if let Some(v) = m.vertices().find(|&v| v >= n) {
        return Err(Error::invalid(format!("{v} is not a vertex of H ⊗ J_{t}")));
    }

    let mut spare = vec![t; h.n()];
    for v in m.vertices() {
        spare[b.base_of(v)] -= 1;
    }
    let mut groups: BTreeMap<(Vertex, Vertex), Vec<(Vertex, Vertex)>> = BTreeMap::new();
    for &(x, y) in m.edges() {
        let (u, v) = (b.base_of(x), b.base_of(y));
        if u != v {
            groups.entry(ordered(u, v)).or_default().push((x, y));
        }
    }
    let keys: Vec<_> = groups.keys().copied().collect();
    let mut options = Vec::with_capacity(keys.len());
    for &(u, v) in &keys {
        let paths = enumerate_paths(h, u, v, usize::MAX)?;
        let c = groups[&(u, v)].len();
        let multisets: Vec<Vec<usize>> = (0..paths.len()).combinations_with_replacement(c).collect();
        options.push((paths, multisets));
    }

    let choices: Box<dyn Iterator<Item = Vec<usize>>> = if options.is_empty() {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(options.iter().map(|(_, ms)| 0..ms.len()).multi_cartesian_product())
    };
    for choice in choices {
        let mut load = vec![0usize; h.n()];
        for (g, &c) in choice.iter().enumerate() {
            let (paths, multisets) = &options[g];
            for &p in &multisets[c] {
                let path = &paths[p];
                for &w in &path[1..path.len() - 1] {
                    load[w] += 1;
                }
            }
        }
        if (0..h.n()).any(|w| load[w] > spare[w]) {
            continue;
        }
        return Ok(Some(realize(&b, m, &keys, &groups, &options, &choice)));
    }
    Ok(None)
}

type Options = Vec<(Vec<Vec<Vertex>>, Vec<Vec<usize>>)>;

fn realize(
    b: &Blowup<'_>,
    m: &Matching,
    keys: &[(Vertex, Vertex)],
    groups: &BTreeMap<(Vertex, Vertex), Vec<(Vertex, Vertex)>>,
    options: &Options,
    choice: &[usize],
) -> Linkage {
    let h = b.base();
    let mut taken = vec![false; h.n() * b.t()];
    for v in m.vertices() {
        taken[v] = true;
    }
    let mut free_clone = |w: Vertex| -> Vertex {
        let id = (0..b.t())
            .map(|c| b.clone_of(w, c))
            .find(|&id| !taken[id])
            .expect("load was checked");
        taken[id] = true;
        id
    };
    let mut routed = BTreeMap::new();
    for (g, key) in keys.iter().enumerate() {
        let (paths, multisets) = &options[g];
        for (&(x, y), &p) in groups[key].iter().zip(&multisets[choice[g]]) {
            let path = &paths[p];
            let forward = path[0] == b.base_of(x);
            let mut full = vec![x];
            let inner: Vec<Vertex> = path[1..path.len() - 1].to_vec();
            let inner: Vec<Vertex> = if forward { inner } else { inner.into_iter().rev().collect() };
            full.extend(inner.into_iter().map(&mut free_clone));
            full.push(y);
            routed.insert((x, y), full);
        }
    }
    let mut linkage = Linkage::new();
    for &(x, y) in m.edges() {
        let path = routed.remove(&(x, y)).unwrap_or_else(|| vec![x, y]);
        linkage.push((x, y), path);
    }
    linkage
}
