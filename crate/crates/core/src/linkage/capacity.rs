use num_rational::BigRational;
use serde::Serialize;

use super::{LinkedSetWitness, Router};
use crate::benes::{self, BenesNetwork};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ratio;

/// Where a lower bound on the linkage capacity comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Witness,
    AvgDegree,
    Flow,
    Grid,
    /// Sampled, not a certificate.
    Empirical,
}

/// A lower bound `γ(H) ≥ value`. `raw` is the formula's value before the
/// trivial floor `γ(H) ≥ 1` is applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapacityBound {
    #[serde(serialize_with = "ratio::serialize")]
    pub value: BigRational,
    #[serde(serialize_with = "ratio::serialize")]
    pub raw: BigRational,
    pub provenance: Provenance,
}

impl CapacityBound {
    pub fn new(raw: BigRational, provenance: Provenance) -> Self {
        CapacityBound {
            value: ratio::max_one(raw.clone()),
            raw,
            provenance,
        }
    }
}

/// `γ(H) ≥ |X| / (3q)` for a matching-linked `X` in `H ⊗ J_q`.
pub fn capacity_from_witness(w: &LinkedSetWitness) -> Result<CapacityBound> {
    if !w.is_trusted() {
        return Err(Error::invalid("witness is neither certified nor analytic"));
    }
    let provenance = match w.router {
        Router::GridAnalytic => Provenance::Grid,
        Router::FlowDerived => Provenance::Flow,
        _ => Provenance::Witness,
    };
    Ok(CapacityBound::new(
        ratio::frac(w.set.len() as u64, 3 * w.q as u64),
        provenance,
    ))
}

/// `γ(⊞_ℓ) ≥ (ℓ−1)/6`, backed by the diagonal witness in `⊞_ℓ ⊗ J_2`.
pub fn grid_capacity_bound(side: usize) -> Result<CapacityBound> {
    let witness = capacity_from_witness(&LinkedSetWitness::grid(side)?)?;
    let lemma = ratio::frac(side as u64 - 1, 6u64);
    debug_assert!(lemma <= witness.raw);
    Ok(CapacityBound::new(lemma, Provenance::Grid))
}

/// `γ(H) ≥ d(H)/48`, numeric only.
pub fn avg_degree_bound(h: &Graph) -> CapacityBound {
    CapacityBound::new(h.average_degree() / ratio::int(48), Provenance::AvgDegree)
}

/// `B̌_ℓ` for the largest `ℓ` with `2^{ℓ+1}ℓ ≤ k`, padded with isolated
/// vertices to exactly `k` vertices.
#[derive(Clone, Debug)]
pub struct CybtPattern {
    pub graph: Graph,
    pub level: u32,
    pub bound: CapacityBound,
}

pub fn cybt_pattern(k: usize) -> Result<CybtPattern> {
    if k < benes::vertex_count(1) {
        return Err(Error::invalid(format!(
            "k = {k} is below the smallest network size {}",
            benes::vertex_count(1)
        )));
    }
    let level = (1..)
        .take_while(|&l| benes::vertex_count(l) <= k)
        .last()
        .expect("level 1 fits");
    let network = BenesNetwork::augmented(level)?;
    let mut graph = network.graph;
    while graph.n() < k {
        graph.add_vertex();
    }
    let bound = capacity_from_witness(&LinkedSetWitness::benes(level)?)?;
    Ok(CybtPattern { graph, level, bound })
}
