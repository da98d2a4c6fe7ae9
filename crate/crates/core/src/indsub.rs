//! Counting induced subgraphs with a property: alternating enumerators, the
//! expansion of `#IndSub(Φ)` into subgraph counts, and the reduction from
//! colorful subgraph counting to `#IndSub(Φ)`.
//!
//! Invariants are evaluated on `k`-vertex graphs given by their labeled
//! adjacency code (see [`crate::graph::canon`]), so `k ≤ 8`.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::canon::{self, pair_bit};
use crate::graph::{ColoredGraph, Graph, Vertex};
use crate::ratio;

/// Largest `|E(H)|` for the `2^{|E(H)|}` sum of the alternating enumerator.
pub const MAX_ENUMERATOR_EDGES: usize = 24;
/// Largest `k` for which all unlabeled `k`-vertex graphs are listed.
pub const MAX_IDENTITY_K: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantKind {
    Clique,
    Edgeless,
    Connected,
    EvenEdges,
    Constant(BigRational),
    /// Values by canonical code; missing classes are 0.
    Table(HashMap<u64, BigRational>),
}

/// An isomorphism-invariant map from `k`-vertex graphs to the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphInvariant {
    pub k: usize,
    pub kind: InvariantKind,
}

impl GraphInvariant {
    pub fn new(k: usize, kind: InvariantKind) -> Result<Self> {
        if k > canon::MAX_VERTICES {
            return Err(Error::envelope(format!("invariants on {k} vertices, at most {} supported", canon::MAX_VERTICES)));
        }
        Ok(GraphInvariant { k, kind })
    }

    pub fn clique(k: usize) -> Result<Self> {
        Self::new(k, InvariantKind::Clique)
    }

    pub fn constant(k: usize, value: BigRational) -> Result<Self> {
        Self::new(k, InvariantKind::Constant(value))
    }

    /// Values per graph; isomorphic graphs must agree.
    pub fn table(k: usize, entries: &[(Graph, BigRational)]) -> Result<Self> {
        let mut table = HashMap::new();
        for (g, value) in entries {
            if g.n() != k {
                return Err(Error::invalid(format!("table entry has {} vertices, expected {k}", g.n())));
            }
            let key = canon::canonical_code(g);
            if let Some(old) = table.insert(key, value.clone()) {
                if old != *value {
                    return Err(Error::invalid(format!(
                        "isomorphic entries get {} and {}",
                        ratio::to_string(&old),
                        ratio::to_string(value)
                    )));
                }
            }
        }
        Self::new(k, InvariantKind::Table(table))
    }

    /// `1` on graphs isomorphic to `h`, `0` elsewhere.
    pub fn indicator(h: &Graph) -> Result<Self> {
        Self::table(h.n(), &[(h.clone(), ratio::int(1))])
    }

    /// Named built-ins: `clique`, `edgeless`, `connected`, `even-edges`,
    /// `constant` (`Φ ≡ 1`) and `constant:VALUE`.
    pub fn builtin(name: &str, k: usize) -> Result<Self> {
        let kind = match name {
            "clique" => InvariantKind::Clique,
            "edgeless" => InvariantKind::Edgeless,
            "connected" => InvariantKind::Connected,
            "even-edges" => InvariantKind::EvenEdges,
            "constant" => InvariantKind::Constant(ratio::int(1)),
            other => match other.strip_prefix("constant:").and_then(ratio::parse) {
                Some(v) => InvariantKind::Constant(v),
                None => return Err(Error::invalid(format!("unknown invariant {other:?}"))),
            },
        };
        Self::new(k, kind)
    }

    pub fn eval(&self, g: &Graph) -> Result<BigRational> {
        if g.n() != self.k {
            return Err(Error::invalid(format!("Φ takes {}-vertex graphs, got {}", self.k, g.n())));
        }
        Ok(self.eval_code(canon::code(g)))
    }

    fn eval_code(&self, code: u64) -> BigRational {
        let k = self.k;
        let full = if k < 2 { 0 } else { (1u64 << (k * (k - 1) / 2)) - 1 };
        let indicator = |b: bool| ratio::int(b as u8);
        match &self.kind {
            InvariantKind::Clique => indicator(code == full),
            InvariantKind::Edgeless => indicator(code == 0),
            InvariantKind::EvenEdges => indicator(code.count_ones().is_multiple_of(2)),
            InvariantKind::Connected => indicator(canon::from_code(k, code).is_connected()),
            InvariantKind::Constant(v) => v.clone(),
            InvariantKind::Table(t) => t
                .get(&canon::canonical_code(&canon::from_code(k, code)))
                .cloned()
                .unwrap_or_else(BigRational::zero),
        }
    }

    /// `true` if `Φ` vanishes on every `k`-vertex graph.
    pub fn has_empty_support(&self) -> bool {
        match &self.kind {
            InvariantKind::Constant(v) => v.is_zero(),
            InvariantKind::Table(t) => t.values().all(Zero::is_zero),
            _ => false,
        }
    }
}

/// Caches `Φ` by labeled code and accumulates integer multiplicities per
/// distinct value, so the exact sum is formed once at the end.
struct Tally<'a> {
    phi: &'a GraphInvariant,
    index: HashMap<u64, usize>,
    values: Vec<BigRational>,
    counts: Vec<i128>,
}

impl<'a> Tally<'a> {
    fn new(phi: &'a GraphInvariant) -> Self {
        Tally { phi, index: HashMap::new(), values: Vec::new(), counts: Vec::new() }
    }

    fn add(&mut self, code: u64, sign: i128) {
        let slot = match self.index.get(&code) {
            Some(&i) => i,
            None => {
                let v = self.phi.eval_code(code);
                let i = match self.values.iter().position(|x| *x == v) {
                    Some(i) => i,
                    None => {
                        self.values.push(v);
                        self.counts.push(0);
                        self.values.len() - 1
                    }
                };
                self.index.insert(code, i);
                i
            }
        };
        self.counts[slot] += sign;
    }

    fn total(&self) -> BigRational {
        self.values
            .iter()
            .zip(&self.counts)
            .map(|(v, &c)| v * ratio::int(BigInt::from(c)))
            .sum()
    }
}

/// `Φ̂(H) = (−1)^{|E(H)|} Σ_{S ⊆ E(H)} (−1)^{|S|} Φ(H[S])`, where `H[S]`
/// keeps every vertex of `H`.
pub fn alternating_enumerator(phi: &GraphInvariant, h: &Graph) -> Result<BigRational> {
    if h.n() != phi.k {
        return Err(Error::invalid(format!("Φ takes {}-vertex graphs, H has {}", phi.k, h.n())));
    }
    let m = h.m();
    if m > MAX_ENUMERATOR_EDGES {
        return Err(Error::envelope(format!("{m} edges, at most {MAX_ENUMERATOR_EDGES} supported")));
    }
    let bits: Vec<u64> = h.edges().iter().map(|&(u, v)| 1u64 << pair_bit(u, v)).collect();
    let mut tally = Tally::new(phi);
    for mask in 0u32..1 << m {
        let code = (0..m).filter(|&i| mask >> i & 1 == 1).fold(0, |acc, i| acc | bits[i]);
        let sign = if (m as u32 - mask.count_ones()).is_multiple_of(2) { 1 } else { -1 };
        tally.add(code, sign);
    }
    Ok(tally.total())
}

/// Labeled code of `G[X]` with the vertices of `X` relabeled `0..|X|` in order.
fn induced_code(g: &Graph, x: &[Vertex]) -> u64 {
    let mut code = 0;
    for j in 1..x.len() {
        for i in 0..j {
            if g.has_edge(x[i], x[j]) {
                code |= 1 << pair_bit(i, j);
            }
        }
    }
    code
}

/// `#IndSub(Φ, G) = Σ_{X ⊆ V(G), |X| = k} Φ(G[X])`. `budget` bounds `C(n, k)`.
pub fn count_indsub(phi: &GraphInvariant, g: &Graph, budget: u64) -> Result<BigRational> {
    let subsets = binomial(g.n() as u128, phi.k as u128);
    if subsets > budget as u128 {
        return Err(Error::BudgetExceeded(budget));
    }
    let mut tally = Tally::new(phi);
    for x in (0..g.n()).combinations(phi.k) {
        tally.add(induced_code(g, &x), 1);
    }
    Ok(tally.total())
}

/// Number of subgraphs `(X, S)` of `G` with `|X| = k`, `S ⊆ E(G[X])`, per
/// isomorphism class (keyed by canonical code).
pub fn subgraph_profile(g: &Graph, k: usize) -> Result<HashMap<u64, u64>> {
    if k > canon::MAX_VERTICES {
        return Err(Error::envelope(format!("k = {k} exceeds {}", canon::MAX_VERTICES)));
    }
    let mut canonical: HashMap<u64, u64> = HashMap::new();
    let mut profile = HashMap::new();
    for x in (0..g.n()).combinations(k) {
        let code = induced_code(g, &x);
        let bits: Vec<u64> = (0..64).filter(|&b| code >> b & 1 == 1).map(|b| 1u64 << b).collect();
        for mask in 0u64..1 << bits.len() {
            let sub = (0..bits.len()).filter(|&i| mask >> i & 1 == 1).fold(0, |acc, i| acc | bits[i]);
            let key = *canonical
                .entry(sub)
                .or_insert_with(|| canon::canonical_code(&canon::from_code(k, sub)));
            *profile.entry(key).or_insert(0) += 1;
        }
    }
    Ok(profile)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    #[serde(serialize_with = "ratio::serialize")]
    pub indsub: BigRational,
    #[serde(serialize_with = "ratio::serialize")]
    pub expansion: BigRational,
    pub holds: bool,
}

/// Compares `#IndSub(Φ, G)` with `Σ_F Φ̂(F)·#Sub(F, G)` over all unlabeled
/// `k`-vertex graphs `F`, both sides by brute force.
pub fn phi_sub_identity_check(phi: &GraphInvariant, g: &Graph) -> Result<IdentityCheck> {
    if phi.k > MAX_IDENTITY_K {
        return Err(Error::envelope(format!("k = {} exceeds {MAX_IDENTITY_K}", phi.k)));
    }
    let indsub = count_indsub(phi, g, u64::MAX)?;
    let profile = subgraph_profile(g, phi.k)?;
    let mut expansion = BigRational::zero();
    for f in canon::unlabeled_graphs(phi.k) {
        let count = profile.get(&canon::canonical_code(&f)).copied().unwrap_or(0);
        if count > 0 {
            expansion += alternating_enumerator(phi, &f)? * ratio::int(count);
        }
    }
    Ok(IdentityCheck { holds: indsub == expansion, indsub, expansion })
}

/// `G_{∖X,Y}`: drops vertices with colors in `x` and edges whose color pair
/// is in `y`. Pairs are unordered; `(i, i)` addresses edges inside class `i`.
pub fn delete_by_colors(g: &ColoredGraph, x: &[usize], y: &[(usize, usize)]) -> ColoredGraph {
    let keep: Vec<Vertex> = (0..g.graph.n()).filter(|&v| !x.contains(&g.color(v))).collect();
    let mut id = vec![usize::MAX; g.graph.n()];
    keep.iter().enumerate().for_each(|(i, &v)| id[v] = i);
    let banned = |a: usize, b: usize| y.iter().any(|&(i, j)| (i, j) == (a, b) || (j, i) == (a, b));
    let edges = g
        .graph
        .edges()
        .iter()
        .filter(|&&(u, v)| id[u] != usize::MAX && id[v] != usize::MAX && !banned(g.color(u), g.color(v)))
        .map(|&(u, v)| (id[u], id[v]))
        .collect();
    let colors = keep.iter().map(|&v| g.color(v)).collect();
    ColoredGraph::new(Graph::from_distinct_edges(keep.len(), edges), colors).expect("one color per vertex")
}

/// Color pairs that are not edges of `H`, including `(i, i)`.
fn non_edges(h: &Graph) -> Vec<(usize, usize)> {
    (0..h.n())
        .flat_map(|j| (0..=j).map(move |i| (i, j)))
        .filter(|&(i, j)| i == j || !h.has_edge(i, j))
        .collect()
}

/// Removes every edge whose color pair is not an edge of `H`; colorful
/// copies of `H` never use such edges.
pub fn colsub_preprocess(h: &Graph, g: &ColoredGraph) -> Result<ColoredGraph> {
    if g.colors().iter().any(|&c| c >= h.n()) {
        return Err(Error::invalid("G uses a color outside V(H)"));
    }
    Ok(delete_by_colors(g, &[], &non_edges(h)))
}

#[derive(Clone, Debug, Serialize)]
pub struct IndsubReduction {
    #[serde(serialize_with = "ratio::serialize")]
    pub phi_hat: BigRational,
    #[serde(serialize_with = "ratio::serialize")]
    pub signed_sum: BigRational,
    pub oracle_calls: usize,
    pub count: u64,
}

/// Colorful copies of `H` in `G` from `#IndSub(Φ, ·)` oracle calls:
/// `Φ̂(H)·#colSub(H, G) = Σ_{X ⊆ V(H), Y ⊆ E(H)} (−1)^{|X|+|Y|} #IndSub(Φ, G°_{∖X,Y})`.
///
/// `G` must already be preprocessed. `budget` bounds `C(n, k)` per call.
pub fn colsub_via_indsub(h: &Graph, g: &ColoredGraph, phi: &GraphInvariant, budget: u64) -> Result<IndsubReduction> {
    if phi.k != h.n() {
        return Err(Error::invalid(format!("Φ takes {}-vertex graphs, H has {}", phi.k, h.n())));
    }
    if g.colors().iter().any(|&c| c >= h.n()) {
        return Err(Error::invalid("G uses a color outside V(H)"));
    }
    if g.graph.edges().iter().any(|&(u, v)| {
        let (a, b) = (g.color(u), g.color(v));
        a == b || !h.has_edge(a, b)
    }) {
        return Err(Error::invalid("G has edges between colors that are not adjacent in H; preprocess it first"));
    }
    let calls = 1usize
        .checked_shl((h.n() + h.m()) as u32)
        .filter(|&c| c <= 1 << 24)
        .ok_or_else(|| Error::envelope("2^(|V(H)|+|E(H)|) oracle calls is too many"))?;
    let phi_hat = alternating_enumerator(phi, h)?;
    if phi_hat.is_zero() {
        return Err(Error::invalid("Φ̂(H) = 0, so Φ cannot count copies of H"));
    }
    let (k, m) = (h.n(), h.m());
    let signed_sum = (0..calls)
        .into_par_iter()
        .map(|mask| {
            let x: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
            let y: Vec<(usize, usize)> = (0..m).filter(|&j| mask >> (k + j) & 1 == 1).map(|j| h.edges()[j]).collect();
            let reduced = delete_by_colors(g, &x, &y);
            let f = count_indsub(phi, &reduced.graph, budget)?;
            Ok(if (x.len() + y.len()).is_multiple_of(2) { f } else { -f })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum::<BigRational>();
    let quotient = &signed_sum / &phi_hat;
    if !quotient.is_integer() || quotient.is_negative() {
        return Err(Error::verification(format!(
            "signed sum {} is not a nonnegative multiple of Φ̂(H) = {}",
            ratio::to_string(&signed_sum),
            ratio::to_string(&phi_hat)
        )));
    }
    let count = quotient
        .to_integer()
        .try_into()
        .map_err(|_| Error::envelope("count overflows 64 bits"))?;
    Ok(IndsubReduction { phi_hat, signed_sum, oracle_calls: calls, count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::count_colorful_sub;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> BigRational {
        ratio::frac(p, d)
    }

    #[test]
    fn enumerator_examples() {
        let one = GraphInvariant::constant(3, ratio::int(1)).unwrap();
        assert_eq!(alternating_enumerator(&one, &Graph::empty(3)).unwrap(), ratio::int(1));
        assert_eq!(alternating_enumerator(&one, &Graph::path(3)).unwrap(), ratio::int(0));
        for k in 2..=5 {
            let clique = GraphInvariant::clique(k).unwrap();
            assert_eq!(alternating_enumerator(&clique, &Graph::complete(k)).unwrap(), ratio::int(1));
        }
        let edgeless = GraphInvariant::builtin("edgeless", 3).unwrap();
        // Σ_S (−1)^{|E|−|S|} [S = ∅] = (−1)^{|E|}
        assert_eq!(alternating_enumerator(&edgeless, &Graph::complete(3)).unwrap(), ratio::int(-1));
        assert!(alternating_enumerator(&one, &Graph::complete(2)).is_err());
    }

    #[test]
    fn indsub_examples() {
        let one = GraphInvariant::constant(3, ratio::int(1)).unwrap();
        assert_eq!(count_indsub(&one, &Graph::cycle(7), u64::MAX).unwrap(), ratio::int(35));
        let clique = GraphInvariant::clique(3).unwrap();
        assert_eq!(count_indsub(&clique, &Graph::complete(6), u64::MAX).unwrap(), ratio::int(20));
        let edgeless = GraphInvariant::builtin("edgeless", 2).unwrap();
        assert_eq!(count_indsub(&edgeless, &Graph::complete(6), u64::MAX).unwrap(), ratio::int(0));
        assert!(count_indsub(&one, &Graph::empty(30), 100).is_err());
    }

    #[test]
    fn tables_are_class_functions() {
        let p3 = Graph::path(3);
        let other = Graph::from_edges(3, &[(0, 2), (1, 2)]).unwrap();
        assert!(GraphInvariant::table(3, &[(p3.clone(), q(1, 2)), (other.clone(), q(1, 3))]).is_err());
        let t = GraphInvariant::table(3, &[(p3, q(1, 2))]).unwrap();
        assert_eq!(t.eval(&other).unwrap(), q(1, 2));
        assert_eq!(t.eval(&Graph::complete(3)).unwrap(), ratio::int(0));
        assert!(GraphInvariant::builtin("bogus", 3).is_err());
        assert_eq!(GraphInvariant::builtin("constant:3/4", 2).unwrap().kind, InvariantKind::Constant(q(3, 4)));
    }

    #[test]
    fn subgraph_profile_counts() {
        // K_3 contains 1 triangle, 3 paths, 3 single edges and 1 edgeless triple
        let p = subgraph_profile(&Graph::complete(3), 3).unwrap();
        let at = |g: Graph| p[&canon::canonical_code(&g)];
        assert_eq!(at(Graph::complete(3)), 1);
        assert_eq!(at(Graph::path(3)), 3);
        assert_eq!(at(Graph::from_edges(3, &[(0, 1)]).unwrap()), 3);
        assert_eq!(at(Graph::empty(3)), 1);
    }

    #[test]
    fn identity_examples() {
        let g = Graph::petersen();
        for phi in [GraphInvariant::clique(2).unwrap(), GraphInvariant::builtin("connected", 3).unwrap()] {
            assert!(phi_sub_identity_check(&phi, &g).unwrap().holds);
        }
        let zero = GraphInvariant::constant(3, ratio::int(0)).unwrap();
        let c = phi_sub_identity_check(&zero, &g).unwrap();
        assert!(c.holds && c.indsub.is_zero());
        assert!(phi_sub_identity_check(&GraphInvariant::clique(6).unwrap(), &g).is_err());
    }

    #[test]
    fn color_deletion() {
        let k3 = ColoredGraph::canonical(&Graph::complete(3));
        assert_eq!(delete_by_colors(&k3, &[], &[]), k3);
        assert_eq!(delete_by_colors(&k3, &[0, 1, 2], &[]).graph.n(), 0);
        let cut = delete_by_colors(&k3, &[], &[(2, 1)]);
        assert_eq!(cut.graph.edges(), &[(0, 1), (0, 2)]);
        let dropped = delete_by_colors(&k3, &[1], &[]);
        assert_eq!((dropped.graph.edges(), dropped.colors()), (&[(0, 1)][..], &[0, 2][..]));
    }

    #[test]
    fn preprocessing_removes_only_useless_edges() {
        // path 0-1-2 as pattern; host edge between colors 0 and 2 is useless
        let h = Graph::path(3);
        let g = ColoredGraph::new(Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap(), vec![0, 1, 2, 2]).unwrap();
        let pre = colsub_preprocess(&h, &g).unwrap();
        assert_eq!(pre.graph.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(
            count_colorful_sub(&h, &pre, u64::MAX).unwrap(),
            count_colorful_sub(&h, &g, u64::MAX).unwrap()
        );
        let k3 = ColoredGraph::canonical(&Graph::complete(3));
        assert_eq!(colsub_preprocess(&Graph::complete(3), &k3).unwrap(), k3);
    }

    #[test]
    fn reduction_examples() {
        let k2 = Graph::complete(2);
        let g = ColoredGraph::new(Graph::from_edges(4, &[(0, 2), (0, 3), (1, 3)]).unwrap(), vec![0, 0, 1, 1]).unwrap();
        let r = colsub_via_indsub(&k2, &g, &GraphInvariant::clique(2).unwrap(), u64::MAX).unwrap();
        assert_eq!((r.count, r.oracle_calls), (3, 8));

        let empty_class = ColoredGraph::new(Graph::new(3), vec![0, 0, 1]).unwrap();
        let k3 = Graph::complete(3);
        let r = colsub_via_indsub(&k3, &empty_class, &GraphInvariant::clique(3).unwrap(), u64::MAX).unwrap();
        assert_eq!(r.count, 0);

        let one = GraphInvariant::constant(2, ratio::int(1)).unwrap();
        assert!(colsub_via_indsub(&k2, &g, &one, u64::MAX).is_err());
        let raw = ColoredGraph::new(Graph::complete(2), vec![0, 0]).unwrap();
        assert!(colsub_via_indsub(&k2, &raw, &GraphInvariant::clique(2).unwrap(), u64::MAX).is_err());
    }

    fn graph(k: usize) -> impl Strategy<Value = Graph> {
        let pairs: Vec<_> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::sample::subsequence(pairs, 0..=len).prop_map(move |e| Graph::from_edges(k, &e).unwrap())
    }

    fn table(k: usize) -> impl Strategy<Value = GraphInvariant> {
        let classes = canon::unlabeled_graphs(k);
        proptest::collection::vec((-3i64..=3, 1i64..=3), classes.len()).prop_map(move |vals| {
            let entries: Vec<_> = classes.iter().cloned().zip(vals.iter().map(|&(p, d)| q(p, d))).collect();
            GraphInvariant::table(k, &entries).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn enumerator_is_isomorphism_invariant(
            (phi, h, perm) in (2usize..=5).prop_flat_map(|k| (table(k), graph(k), Just((0..k).collect::<Vec<_>>()).prop_shuffle()))
        ) {
            prop_assert_eq!(alternating_enumerator(&phi, &h).unwrap(), alternating_enumerator(&phi, &h.relabel(&perm)).unwrap());
        }

        #[test]
        fn mobius_round_trip((phi, h) in (1usize..=4).prop_flat_map(|k| (table(k), graph(k)))) {
            // Φ(H) = Σ_{S ⊆ E(H)} Φ̂(H[S])
            let m = h.m();
            let mut total = BigRational::zero();
            for mask in 0u32..1 << m {
                let s: Vec<_> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| h.edges()[i]).collect();
                total += alternating_enumerator(&phi, &Graph::from_edges(h.n(), &s).unwrap()).unwrap();
            }
            prop_assert_eq!(total, phi.eval(&h).unwrap());
        }

        #[test]
        fn identity_holds_for_random_tables((phi, g) in (2usize..=4).prop_flat_map(|k| (table(k), (4usize..=8).prop_flat_map(graph)))) {
            let c = phi_sub_identity_check(&phi, &g).unwrap();
            prop_assert!(c.holds, "{:?}", c);
        }

        #[test]
        fn reduction_matches_direct_count(
            (pattern, g, colors) in (0usize..4).prop_flat_map(|i| {
                let h = [Graph::complete(2), Graph::path(3), Graph::complete(3), Graph::cycle(4)][i].clone();
                let k = h.n();
                (Just(h), (3usize..=9).prop_flat_map(move |n| (graph(n), proptest::collection::vec(0..k, n))))
            }).prop_map(|(h, (g, c))| (h, g, c))
        ) {
            let g = colsub_preprocess(&pattern, &ColoredGraph::new(g, colors).unwrap()).unwrap();
            let phi = GraphInvariant::indicator(&pattern).unwrap();
            let r = colsub_via_indsub(&pattern, &g, &phi, u64::MAX).unwrap();
            prop_assert_eq!(r.count, count_colorful_sub(&pattern, &g, u64::MAX).unwrap());
        }

        #[test]
        fn empty_support_vanishes((k, g) in (1usize..=4).prop_flat_map(|k| (Just(k), (4usize..=7).prop_flat_map(graph)))) {
            let zero = GraphInvariant::table(k, &[(Graph::empty(k), ratio::int(0))]).unwrap();
            prop_assert!(zero.has_empty_support());
            prop_assert!(count_indsub(&zero, &g, u64::MAX).unwrap().is_zero());
            prop_assert!(alternating_enumerator(&zero, &Graph::complete(k)).unwrap().is_zero());
        }
    }
}
