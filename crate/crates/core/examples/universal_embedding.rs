//! Embed the Petersen graph as a topological minor of a blown-up augmented
//! Beneš network, and reduce the network to maximum degree 3.

use linkagelab::benes::{degree3_transform, universal_embed, BenesNetwork};
use linkagelab::graph::Graph;
use linkagelab::linkage::is_matching_linked;

fn main() -> linkagelab::Result<()> {
    let emb = universal_embed(&Graph::petersen(), 4)?;
    emb.verify()?;
    println!(
        "Petersen in B̌_4 ⊗ J_{}: {} branch vertices, {} paths, longest {}",
        emb.t,
        emb.branch.len(),
        emb.model.len(),
        emb.model.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    );

    let net = BenesNetwork::augmented(2)?;
    let cubic = degree3_transform(&net.graph);
    let cert = is_matching_linked(&cubic, &net.inputs, 100_000)?;
    println!(
        "B̌_2 with degree-4 vertices split: {} vertices, max degree {}, inputs certified: {}",
        cubic.n(),
        cubic.max_degree(),
        cert.is_certified()
    );
    Ok(())
}
