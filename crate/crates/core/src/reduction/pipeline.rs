use num_bigint::BigUint;
use serde::Serialize;

use super::{count_3assignments, count_3colorings, count_colorful_sub_in_order, reroute, Layout, MAX_COLORING_VERTICES};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linkage::LinkedSetWitness;

/// Limits for the stages that search.
#[derive(Clone, Copy, Debug)]
pub struct PipelineBudget {
    /// Node budget for backtracking routers.
    pub routing: u64,
    /// Node budget for the colorful subgraph count.
    pub counting: u64,
}

impl Default for PipelineBudget {
    fn default() -> Self {
        PipelineBudget { routing: 1_000_000, counting: 50_000_000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub layout: Layout,
    pub max_block: usize,
    pub g_prime_vertices: usize,
    pub g_prime_edges: usize,
    pub x_vertices: usize,
    pub x_edges: usize,
    /// `k·3^t` as a decimal string.
    pub size_bound: String,
    /// `None` when `G` is beyond the brute-force envelope.
    pub colorings: Option<u64>,
    pub assignments: u64,
    pub colorful: u64,
    pub colorings_match: Option<bool>,
    pub colorful_match: bool,
}

impl PipelineReport {
    pub fn verified(&self) -> bool {
        self.colorful_match && self.colorings_match != Some(false)
    }
}

/// Runs 3-Coloring → embedded 3-Assignment → split-and-list → colorful count
/// and reports every count. Stage failures carry the stage name.
pub fn full_pipeline(g: &Graph, witness: &LinkedSetWitness, budget: PipelineBudget) -> Result<PipelineReport> {
    let embedded = reroute(g, witness, budget.routing).map_err(|e| e.in_stage("reroute"))?;
    embedded.verify(g).map_err(|e| e.in_stage("reroute"))?;
    let x = embedded.split_list().map_err(|e| e.in_stage("split-list"))?;

    let k = witness.base.n();
    let bound = BigUint::from(k) * BigUint::from(3u32).pow(embedded.t as u32);
    if BigUint::from(x.vertex_count()) > bound {
        return Err(Error::verification(format!(
            "|V(X)| = {} exceeds k·3^t = {bound}",
            x.vertex_count()
        ))
        .in_stage("split-list"));
    }

    let colorings = if g.n() <= MAX_COLORING_VERTICES {
        Some(count_3colorings(g).map_err(|e| e.in_stage("3-coloring"))?)
    } else {
        None
    };
    let assignments = count_3assignments(&embedded.instance).map_err(|e| e.in_stage("3-assignment"))?;
    let order = embedded.block_order(g.n());
    let colorful = count_colorful_sub_in_order(&witness.base, &x.colored, &order, budget.counting).map_err(|e| e.in_stage("colorful"))?;
    Ok(PipelineReport {
        n: g.n(),
        k,
        t: embedded.t,
        layout: embedded.layout,
        max_block: x.blocks.iter().map(Vec::len).max().unwrap_or(0),
        g_prime_vertices: embedded.instance.graph.n(),
        g_prime_edges: embedded.instance.graph.m(),
        x_vertices: x.vertex_count(),
        x_edges: x.colored.graph.m(),
        size_bound: bound.to_string(),
        colorings,
        assignments,
        colorful,
        colorings_match: colorings.map(|c| c == assignments),
        colorful_match: colorful == assignments,
    })
}
