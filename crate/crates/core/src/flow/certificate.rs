use std::sync::Arc;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{integralize, route_in_complete, solve_concurrent_flow, CongestedCliqueLinkage};
use crate::error::{Error, Result};
use crate::graph::{lift_congested_linkage, ordered, Blowup, BlowupVertex, Graph, Linkage, Matching, Multigraph, Vertex};
use crate::linkage::{CapacityBound, Certification, LinkedSetWitness, Provenance, Router, WitnessStatus};
use crate::ratio;

/// Sets up to this size are certified over every maximal matching.
pub const EXHAUSTIVE_LIMIT: usize = 12;
/// Matchings routed when the set is too large to enumerate.
pub const SAMPLES: usize = 64;

/// Routes matchings on `X = {w^(i) : w ∈ W, i < q|W|}` in `H ⊗ J_{36D}`.
#[derive(Debug)]
pub struct FlowRouter {
    pub clique: CongestedCliqueLinkage,
}

impl FlowRouter {
    /// `D′ = 18D`; the host is `H ⊗ J_{2D′}`.
    pub fn d_prime(&self) -> usize {
        18 * self.clique.d
    }

    pub fn set_size_per_terminal(&self) -> usize {
        self.clique.q * self.clique.terminals.len()
    }

    /// Projects `m`, routes the projection in `K_t` with every edge used at
    /// most `18q` times, replaces each edge by one of its `q` clique paths
    /// (each used at most 18 times), shortcuts the walks and lifts the
    /// `D′`-congested result.
    pub fn route(&self, h: &Graph, m: &Matching) -> Result<Linkage> {
        let dp = self.d_prime();
        let big = Blowup::new(h, 2 * dp)?;
        let small = Blowup::new(h, dp)?;
        let w = &self.clique.terminals;
        let index = |base: Vertex| {
            w.binary_search(&base)
                .map_err(|_| Error::invalid(format!("{base} is not a terminal")))
        };

        let mut small_edges = Vec::with_capacity(m.len());
        let mut projected = Multigraph::new(w.len());
        for &(a, b) in m.edges() {
            let (x, y) = (big.vertex(a), big.vertex(b));
            if x.clone >= dp || y.clone >= dp {
                return Err(Error::invalid(format!("{a}-{b} leaves the first D′ clones")));
            }
            small_edges.push((small.id(x), small.id(y)));
            if x.base != y.base {
                projected.add_edge(index(x.base)?, index(y.base)?)?;
            }
        }

        let routes = route_in_complete(&projected, self.clique.q)?;
        let mut uses = std::collections::HashMap::new();
        let mut walks = routes.iter();
        let mut flat = Linkage::new();
        for &(a, b) in m.edges() {
            let (u, v) = (big.base_of(a), big.base_of(b));
            if u == v {
                continue;
            }
            let hops = walks.next().expect("one route per projected edge");
            let mut walk = vec![u];
            for e in hops.windows(2) {
                let (x, y) = (w[e[0]], w[e[1]]);
                let k = uses.entry(ordered(x, y)).or_insert(0usize);
                let path = self
                    .clique
                    .paths_between(x, y)
                    .nth(*k / 18)
                    .ok_or_else(|| Error::verification(format!("edge {x}-{y} used more than 18q times")))?;
                *k += 1;
                walk.extend_from_slice(&path[1..]);
            }
            flat.push((u, v), shortcut(&walk));
        }
        lift_congested_linkage(h, dp, &Matching::new(small_edges)?, &flat)
    }
}

/// Removes closed sub-walks so that every vertex appears once.
fn shortcut(walk: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::with_capacity(walk.len());
    for &v in walk {
        if let Some(i) = out.iter().position(|&x| x == v) {
            out.truncate(i + 1);
        } else {
            out.push(v);
        }
    }
    out
}

/// How the witness of a flow certificate was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckScope {
    /// Every maximal matching, up to clone symmetry.
    Exhaustive(usize),
    /// Random perfect matchings.
    Sampled(usize),
}

#[derive(Clone, Debug)]
pub struct FlowCertificate {
    pub epsilon: BigRational,
    pub d: usize,
    pub q: usize,
    pub witness: LinkedSetWitness,
    pub bound: CapacityBound,
    pub scope: CheckScope,
}

/// `γ(H) ≥ ε(H,W)·|W|²/108`, together with the matching-linked set in
/// `H ⊗ J_{36D}` that proves it, checked on its matchings.
pub fn flow_capacity_certificate(h: &Graph, w: &[Vertex]) -> Result<FlowCertificate> {
    let solution = solve_concurrent_flow(h, w)?;
    let clique = integralize(&solution)?;
    let router = FlowRouter { clique };
    let (d, q) = (router.clique.d, router.clique.q);
    let t = router.clique.terminals.len();
    let s = router.set_size_per_terminal();
    let layers = 2 * router.d_prime();
    if h.n().checked_mul(layers).is_none_or(|n| n > 1 << 24) {
        return Err(Error::envelope(format!("H ⊗ J_{layers} is too large")));
    }
    let set: Vec<_> = router
        .clique
        .terminals
        .iter()
        .flat_map(|&base| (0..s).map(move |clone| BlowupVertex { base, clone }))
        .collect();
    let mut witness = LinkedSetWitness::new(h.clone(), layers, set, Router::FlowDerived, WitnessStatus::Analytic)
        .with_flow(Arc::new(router));

    let raw = &solution.epsilon * ratio::int((t * t) as u64) / ratio::int(108);
    let bound = CapacityBound::new(raw, Provenance::Flow);

    let scope = if witness.set.len() <= EXHAUSTIVE_LIMIT {
        match witness.certify(0)? {
            Certification::Certified { matchings_checked } => CheckScope::Exhaustive(matchings_checked),
            other => return Err(Error::verification(format!("flow witness failed: {other:?}"))),
        }
    } else {
        let ids = witness.set_ids();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..SAMPLES {
            let mut order = ids.clone();
            order.shuffle(&mut rng);
            let m = Matching::new(order.chunks_exact(2).map(|c| (c[0], c[1])).collect())?;
            witness.route(&m, 0)?;
        }
        CheckScope::Sampled(SAMPLES)
    };
    Ok(FlowCertificate { epsilon: solution.epsilon, d, q, witness, bound, scope })
}
