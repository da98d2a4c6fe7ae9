//! Beneš networks: construction, input-to-output routing, routing among the
//! inputs of the augmented network, and a universal topological-minor
//! embedding built on top of it.
//!
//! Layout of a subnetwork with `s` inputs placed at offset `o`: inputs are
//! `o..o+s`, outputs `o+s..o+2s`, the upper half starts at `o+2s` and the
//! lower half at `o+2s+T(s/2)`, where `T(s) = 2s·log₂s`. The base case
//! (`s = 2`) is `K_{2,2}` between its two inputs and two outputs.

use crate::error::{Error, Result};
use crate::graph::{greedy_edge_color, Blowup, Graph, Linkage, Matching, Multigraph, Vertex};

/// Vertex count `T(s)` of a network with `s = 2^level` inputs.
pub fn vertex_count(level: u32) -> usize {
    let s = 1usize << level;
    2 * s * level as usize
}

#[derive(Clone, Debug)]
pub struct BenesNetwork {
    pub graph: Graph,
    pub level: u32,
    pub inputs: Vec<Vertex>,
    pub outputs: Vec<Vertex>,
    pub augmented: bool,
}

impl BenesNetwork {
    /// The plain network `B_level`.
    pub fn new(level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::invalid("Beneš level must be at least 1"));
        }
        if level > 24 {
            return Err(Error::envelope(format!("level {level} is too large to materialize")));
        }
        let s = 1usize << level;
        let mut graph = Graph::new(vertex_count(level));
        build(&mut graph, 0, level);
        Ok(BenesNetwork {
            graph,
            level,
            inputs: (0..s).collect(),
            outputs: (s..2 * s).collect(),
            augmented: false,
        })
    }

    /// The augmented network `B̌_level`.
    pub fn augmented(level: u32) -> Result<Self> {
        BenesNetwork::new(level)?.augment()
    }

    /// Adds the output short-circuit edges `w_{2i}w_{2i+1}`.
    pub fn augment(mut self) -> Result<Self> {
        if self.augmented {
            return Err(Error::invalid("network is already augmented"));
        }
        for pair in self.outputs.chunks(2) {
            self.graph.add_edge(pair[0], pair[1])?;
        }
        self.augmented = true;
        Ok(self)
    }

    pub fn s(&self) -> usize {
        self.inputs.len()
    }

    /// The "upper half": the upper subnetwork plus inputs and outputs with
    /// index below `s/2`.
    pub fn upper_half(&self) -> Vec<Vertex> {
        let s = self.s();
        let h = s / 2;
        let mut u: Vec<Vertex> = (0..h).chain(s..s + h).collect();
        if self.level >= 2 {
            u.extend(2 * s..2 * s + vertex_count(self.level - 1));
        }
        u
    }
}

fn build(g: &mut Graph, o: usize, level: u32) {
    let s = 1usize << level;
    if level == 1 {
        for i in 0..2 {
            for j in 0..2 {
                g.add_edge(o + i, o + 2 + j).unwrap();
            }
        }
        return;
    }
    let h = s / 2;
    let up = o + 2 * s;
    let down = up + vertex_count(level - 1);
    build(g, up, level - 1);
    build(g, down, level - 1);
    for i in 0..h {
        for x in [o + i, o + i + h] {
            g.add_edge(x, up + i).unwrap();
            g.add_edge(x, down + i).unwrap();
        }
        for x in [o + s + i, o + s + i + h] {
            g.add_edge(x, up + h + i).unwrap();
            g.add_edge(x, down + h + i).unwrap();
        }
    }
}

/// Which half of the network a path takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Half {
    Up,
    Down,
}

impl Half {
    fn flip(self) -> Half {
        match self {
            Half::Up => Half::Down,
            Half::Down => Half::Up,
        }
    }
}

/// The `ResolveConflict` step for one level.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// `F(i)`: half used by the path starting at input `i`.
    pub half: Vec<Half>,
    /// `L(i)`: input index inside the chosen half.
    pub left: Vec<usize>,
    /// `R(j)`: output index inside the half used by the path ending at `j`.
    pub right: Vec<usize>,
    /// Half used by the path ending at output `j`.
    pub right_half: Vec<Half>,
}

/// Two-colors the conflict graph `D = D₁ ∪ D₂` for the permutation `perm`
/// (input `i` goes to output `perm[i]`).
///
/// `D₁` pairs inputs `i` and `i+s/2`; `D₂` pairs the inputs whose outputs are
/// `j` and `j+s/2`. Both are perfect matchings, so every component is an
/// alternating even cycle and the walk below colors it properly.
pub fn resolve_conflict(perm: &[usize]) -> Result<Resolution> {
    let s = perm.len();
    if s < 2 || !s.is_power_of_two() {
        return Err(Error::invalid(format!("{s} is not a power of two ≥ 2")));
    }
    let inv = inverse(perm)?;
    Ok(resolve_unchecked(perm, &inv))
}

fn inverse(perm: &[usize]) -> Result<Vec<usize>> {
    let mut inv = vec![usize::MAX; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        if j >= perm.len() || inv[j] != usize::MAX {
            return Err(Error::invalid("matching is not a perfect input-output matching"));
        }
        inv[j] = i;
    }
    Ok(inv)
}

fn resolve_unchecked(perm: &[usize], inv: &[usize]) -> Resolution {
    let s = perm.len();
    let h = s / 2;
    let r = |i: usize| if i < h { i + h } else { i - h };
    let mut color: Vec<Option<Half>> = vec![None; s];
    for start in 0..s {
        if color[start].is_some() {
            continue;
        }
        // walk the cycle, alternating D1 and D2 edges
        let mut x = start;
        let c = Half::Up;
        loop {
            color[x] = Some(c);
            let y = r(x);
            match color[y] {
                None => color[y] = Some(c.flip()),
                Some(cy) => assert_ne!(cy, c, "conflict graph is not bipartite"),
            }
            let z = inv[r(perm[y])];
            match color[z] {
                None => {
                    x = z;
                }
                Some(cz) => {
                    assert_eq!(cz, c, "conflict graph is not bipartite");
                    break;
                }
            }
        }
    }
    let half: Vec<Half> = color.into_iter().map(Option::unwrap).collect();
    let left = (0..s).map(|i| i % h).collect();
    let mut right = vec![0; s];
    let mut right_half = vec![Half::Up; s];
    for i in 0..s {
        right[perm[i]] = perm[i] % h;
        right_half[perm[i]] = half[i];
    }
    Resolution {
        half,
        left,
        right,
        right_half,
    }
}

/// Routes the permutation `perm` through `B_level` and returns the flat path
/// matrix: row `i` holds the `2·level` vertices of the path from input `i`
/// to output `perm[i]`.
pub fn route_matrix(level: u32, perm: &[usize]) -> Result<Vec<Vertex>> {
    if level == 0 {
        return Err(Error::invalid("Beneš level must be at least 1"));
    }
    let s = 1usize << level;
    if perm.len() != s {
        return Err(Error::invalid(format!(
            "matching covers {} inputs, network has {s}",
            perm.len()
        )));
    }
    inverse(perm)?;
    let width = 2 * level as usize;
    let mut out = vec![0; s * width];
    let rows: Vec<usize> = (0..s).collect();
    route_into(&mut out, width, 0, level, perm, &rows, 0);
    Ok(out)
}

fn route_into(
    out: &mut [Vertex],
    width: usize,
    o: usize,
    level: u32,
    perm: &[usize],
    rows: &[usize],
    depth: usize,
) {
    let s = perm.len();
    for i in 0..s {
        out[rows[i] * width + depth] = o + i;
        out[rows[i] * width + width - 1 - depth] = o + s + perm[i];
    }
    if level == 1 {
        return;
    }
    let h = s / 2;
    let mut inv = vec![0; s];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = i;
    }
    let res = resolve_unchecked(perm, &inv);
    let mut sub_perm = [vec![0; h], vec![0; h]];
    let mut sub_rows = [vec![0; h], vec![0; h]];
    for i in 0..s {
        let k = (res.half[i] == Half::Down) as usize;
        sub_perm[k][res.left[i]] = res.right[perm[i]];
        sub_rows[k][res.left[i]] = rows[i];
    }
    let up = o + 2 * s;
    let down = up + vertex_count(level - 1);
    route_into(out, width, up, level - 1, &sub_perm[0], &sub_rows[0], depth + 1);
    route_into(out, width, down, level - 1, &sub_perm[1], &sub_rows[1], depth + 1);
}

/// `BenesLink`: an uncongested linkage in `B_level` joining input `i` to
/// output `perm[i]`.
pub fn benes_link(level: u32, perm: &[usize]) -> Result<Linkage> {
    let matrix = route_matrix(level, perm)?;
    let s = perm.len();
    let width = 2 * level as usize;
    let mut linkage = Linkage::new();
    for (i, row) in matrix.chunks(width).enumerate() {
        linkage.push((i, s + perm[i]), row.to_vec());
    }
    Ok(linkage)
}

/// An uncongested linkage for `matching` (over input ids `0..s`) in `B̌_level`.
///
/// Inputs left unmatched are paired in ascending order. The `i`-th pair `ab`
/// in lexicographic order is routed to outputs `2i` and `2i+1`, and the two
/// halves are joined across the short-circuit edge between those outputs.
pub fn augmented_link(level: u32, matching: &Matching) -> Result<Linkage> {
    if level == 0 {
        return Err(Error::invalid("Beneš level must be at least 1"));
    }
    let s = 1usize << level;
    if let Some(v) = matching.vertices().find(|&v| v >= s) {
        return Err(Error::invalid(format!("{v} is not an input of B̌_{level}")));
    }
    let mut pairs = matching.edges().to_vec();
    pairs.sort_unstable();
    let real = pairs.len();
    let mut covered = vec![false; s];
    for v in matching.vertices() {
        covered[v] = true;
    }
    let free: Vec<usize> = (0..s).filter(|&v| !covered[v]).collect();
    pairs.extend(free.chunks(2).map(|c| (c[0], c[1])));

    let mut perm = vec![0; s];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        perm[a] = 2 * i;
        perm[b] = 2 * i + 1;
    }
    let matrix = route_matrix(level, &perm)?;
    let width = 2 * level as usize;
    let mut linkage = Linkage::new();
    for &(a, b) in &pairs[..real] {
        let mut path = matrix[a * width..(a + 1) * width].to_vec();
        path.extend(matrix[b * width..(b + 1) * width].iter().rev());
        linkage.push((a, b), path);
    }
    Ok(linkage)
}

/// Splits every degree-4 vertex `v` into an edge `vv'`: `v` keeps its two
/// smallest neighbors, the new vertex `v'` (id `≥ n`) takes the other two.
/// Vertices of degree at most 3 keep their id and neighborhood.
pub fn degree3_transform(g: &Graph) -> Graph {
    let n = g.n();
    let mut twin = vec![usize::MAX; n];
    let mut next = n;
    for v in 0..n {
        if g.degree(v) == 4 {
            twin[v] = next;
            next += 1;
        }
    }
    let side = |v: Vertex, towards: Vertex| -> Vertex {
        if twin[v] != usize::MAX && g.neighbors(v)[2..].contains(&towards) {
            twin[v]
        } else {
            v
        }
    };
    let mut out = Graph::new(next);
    for v in 0..n {
        if twin[v] != usize::MAX {
            out.add_edge(v, twin[v]).unwrap();
        }
    }
    for &(u, v) in g.edges() {
        out.add_edge(side(u, v), side(v, u)).unwrap();
    }
    out
}

/// A topological minor model of a guest graph in `B̌_level ⊗ J_t`.
#[derive(Clone, Debug)]
pub struct UniversalEmbedding {
    pub network: BenesNetwork,
    pub t: usize,
    /// Host vertex of each guest vertex.
    pub branch: Vec<Vertex>,
    /// Guest edges in the order of `model`.
    pub guest_edges: Vec<(Vertex, Vertex)>,
    /// One host path per guest edge.
    pub model: Linkage,
}

impl UniversalEmbedding {
    pub fn host(&self) -> Blowup<'_> {
        Blowup::new(&self.network.graph, self.t).expect("t ≥ 1")
    }

    pub fn verify(&self) -> Result<()> {
        let pairs: Vec<_> = self
            .guest_edges
            .iter()
            .map(|&(u, v)| (self.branch[u], self.branch[v]))
            .collect();
        self.model.check_topological_minor(&self.host(), &pairs)?;
        Ok(())
    }
}

/// Embeds `g` as a topological minor of `B̌_level ⊗ J_t` with `t = 2Δ−1`.
///
/// Guest vertex `v` sits at input `v` in clone 0. The greedy edge coloring
/// gives at most `2Δ−1` matchings; the interior of the `i`-th one is placed in
/// clone `i`. Interiors never touch inputs, so clone 0 is shared safely.
pub fn universal_embed(g: &Graph, level: u32) -> Result<UniversalEmbedding> {
    let network = BenesNetwork::augmented(level)?;
    if g.n() > network.s() {
        return Err(Error::invalid(format!(
            "{} vertices do not fit into {} inputs",
            g.n(),
            network.s()
        )));
    }
    let classes = greedy_edge_color(&Multigraph::from(g));
    let t = (2 * g.max_degree()).saturating_sub(1).max(1);
    debug_assert!(classes.len() <= t);
    let blowup = Blowup::new(&network.graph, t)?;
    let branch: Vec<Vertex> = (0..g.n()).map(|v| blowup.clone_of(v, 0)).collect();
    let mut guest_edges = Vec::with_capacity(g.m());
    let mut model = Linkage::new();
    for (layer, class) in classes.iter().enumerate() {
        for ((a, b), path) in augmented_link(level, class)?.into_paths() {
            let last = path.len() - 1;
            let lifted = path
                .iter()
                .enumerate()
                .map(|(i, &x)| blowup.clone_of(x, if i == 0 || i == last { 0 } else { layer }))
                .collect();
            guest_edges.push((a, b));
            model.push((branch[a], branch[b]), lifted);
        }
    }
    Ok(UniversalEmbedding {
        network,
        t,
        branch,
        guest_edges,
        model,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Adjacency;
    use itertools::Itertools;
    use std::collections::HashSet;

    #[test]
    fn level_one_is_k22() {
        let b = BenesNetwork::new(1).unwrap();
        assert_eq!(b.graph.n(), 4);
        assert_eq!(b.graph.m(), 4);
        for &v in &b.inputs {
            for &w in &b.outputs {
                assert!(b.graph.has_edge(v, w));
            }
        }
        let a = b.augment().unwrap();
        assert_eq!(a.graph.m(), 5);
        assert!(a.augment().is_err());
    }

    #[test]
    fn sizes_and_degrees() {
        assert_eq!(BenesNetwork::new(3).unwrap().graph.n(), 48);
        for level in 1..=8 {
            let b = BenesNetwork::new(level).unwrap();
            let s = 1usize << level;
            assert_eq!(b.graph.n(), 2 * s * level as usize);
            if level >= 2 {
                assert_eq!(b.graph.n(), 2 * vertex_count(level - 1) + 2 * s);
                assert_eq!(b.graph.max_degree(), 4);
            }
            let m = b.graph.m();
            let a = b.augment().unwrap();
            assert_eq!(a.graph.m(), m + s / 2);
            assert!(a.graph.max_degree() <= 4);
        }
        assert!(BenesNetwork::new(0).is_err());
    }

    #[test]
    fn upper_half_has_small_boundary() {
        for level in 2..=6 {
            let b = BenesNetwork::new(level).unwrap();
            let s = b.s();
            let u: HashSet<_> = b.upper_half().into_iter().collect();
            assert_eq!(u.len(), s * level as usize);
            let boundary: HashSet<_> = u
                .iter()
                .flat_map(|&x| b.graph.neighbors(x).iter().copied())
                .filter(|y| !u.contains(y))
                .collect();
            assert!(boundary.len() <= 2 * s, "level {level}: {}", boundary.len());
        }
    }

    #[test]
    fn resolve_small_cases() {
        let r = resolve_conflict(&[0, 1]).unwrap();
        assert_ne!(r.half[0], r.half[1]);
        let perm = [0, 1, 2, 3];
        let r = resolve_conflict(&perm).unwrap();
        for i in 0..2 {
            assert_ne!(r.half[i], r.half[i + 2]);
            // outputs i and i+2 come from distinct halves
            assert_ne!(r.right_half[i], r.right_half[i + 2]);
        }
        assert!(resolve_conflict(&[0, 0, 1, 2]).is_err());
        assert!(resolve_conflict(&[0, 1, 2]).is_err());
    }

    #[test]
    fn level_one_routing_is_direct() {
        let l = benes_link(1, &[0, 1]).unwrap();
        assert_eq!(l.paths()[0].1, vec![0, 2]);
        assert_eq!(l.paths()[1].1, vec![1, 3]);
    }

    #[test]
    fn every_permutation_routes_up_to_level_three() {
        for level in 1..=3u32 {
            let b = BenesNetwork::new(level).unwrap();
            let s = b.s();
            for perm in (0..s).permutations(s) {
                let l = benes_link(level, &perm).unwrap();
                let pairs: Vec<_> = (0..s).map(|i| (i, s + perm[i])).collect();
                l.check(&b.graph, &pairs, 1).unwrap();
            }
        }
    }

    #[test]
    fn figure_matching_routes() {
        let b = BenesNetwork::augmented(3).unwrap();
        let m = Matching::new(vec![(0, 6), (1, 2), (3, 5), (4, 7)]).unwrap();
        let l = augmented_link(3, &m).unwrap();
        l.check(&b.graph, m.edges(), 1).unwrap();
        assert!(augmented_link(3, &Matching::empty()).unwrap().is_empty());
        assert!(augmented_link(2, &Matching::new(vec![(0, 4)]).unwrap()).is_err());
    }

    #[test]
    fn degree3_split() {
        let star = Graph::star(2);
        assert_eq!(degree3_transform(&star), star);
        let b = BenesNetwork::augmented(2).unwrap();
        let d3 = degree3_transform(&b.graph);
        assert_eq!(d3.max_degree(), 3);
        let fours = (0..b.graph.n()).filter(|&v| b.graph.degree(v) == 4).count();
        assert_eq!(d3.n(), b.graph.n() + fours);
        assert_eq!(d3.m(), b.graph.m() + fours);
    }

    #[test]
    fn universal_examples() {
        let e = universal_embed(&Graph::complete(2), 1).unwrap();
        assert_eq!(e.t, 1);
        e.verify().unwrap();
        let e = universal_embed(&Graph::complete(4), 2).unwrap();
        assert_eq!(e.t, 5);
        e.verify().unwrap();
        let e = universal_embed(&Graph::cycle(8), 3).unwrap();
        assert_eq!(e.t, 3);
        e.verify().unwrap();
        assert!(universal_embed(&Graph::cycle(5), 2).is_err());
        let host = e.host();
        assert_eq!(host.vertex_count(), 48 * 3);
    }
}
