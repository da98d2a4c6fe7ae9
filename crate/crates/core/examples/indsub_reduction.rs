//! Induced-subgraph counts: the expansion into subgraph counts, and counting
//! colorful triangles with an oracle for #IndSub(Φ, ·).

use linkagelab::graph::{ColoredGraph, Graph};
use linkagelab::indsub::{alternating_enumerator, colsub_preprocess, colsub_via_indsub, phi_sub_identity_check, GraphInvariant};
use linkagelab::random::sample_gnp;
use linkagelab::ratio;
use linkagelab::reduction::count_colorful_sub;

fn main() -> linkagelab::Result<()> {
    let g = sample_gnp(9, 0.5, 3)?;
    let connected = GraphInvariant::builtin("connected", 3)?;
    let check = phi_sub_identity_check(&connected, &g)?;
    println!(
        "connected 3-sets: {} direct, {} via subgraph counts",
        ratio::to_string(&check.indsub),
        ratio::to_string(&check.expansion)
    );

    let triangle = Graph::complete(3);
    let even = GraphInvariant::builtin("even-edges", 3)?;
    println!("Φ̂(K_3) for the even-edges invariant: {}", ratio::to_string(&alternating_enumerator(&even, &triangle)?));

    let colored = ColoredGraph::new(sample_gnp(12, 0.6, 5)?, (0..12).map(|v| v % 3).collect())?;
    let host = colsub_preprocess(&triangle, &colored)?;
    let reduced = colsub_via_indsub(&triangle, &host, &GraphInvariant::clique(3)?, u64::MAX)?;
    let direct = count_colorful_sub(&triangle, &host, u64::MAX)?;
    println!("colorful triangles: {} from {} oracle calls, {direct} directly", reduced.count, reduced.oracle_calls);
    Ok(())
}
