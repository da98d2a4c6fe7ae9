//! Count 3-colorings of the Petersen graph three ways: brute force, as a
//! 3-Assignment instance embedded in a pattern, and as colorful copies of the
//! pattern in the split-and-list graph.

use linkagelab::graph::Graph;
use linkagelab::linkage::LinkedSetWitness;
use linkagelab::reduction::{full_pipeline, PipelineBudget};

fn main() -> linkagelab::Result<()> {
    let g = Graph::petersen();
    for (name, witness) in [("B̌_3", LinkedSetWitness::benes(3)?), ("grid 4", LinkedSetWitness::grid(4)?)] {
        let r = full_pipeline(&g, &witness, PipelineBudget::default())?;
        println!(
            "{name}: colorings {:?}, assignments {}, colorful {}; t = {}, |V(X)| = {} ≤ {}",
            r.colorings, r.assignments, r.colorful, r.t, r.x_vertices, r.size_bound
        );
    }
    Ok(())
}
