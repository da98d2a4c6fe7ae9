//! Route a permutation through B_3 and a matching among the inputs of the
//! augmented network, then print the network in the shared file format.

use linkagelab::benes::{augmented_link, benes_link, BenesNetwork};
use linkagelab::format::format_network;
use linkagelab::graph::Matching;

fn main() -> linkagelab::Result<()> {
    let net = BenesNetwork::new(3)?;
    let perm = [3, 7, 0, 5, 1, 6, 2, 4];
    let linkage = benes_link(3, &perm)?;
    let pairs: Vec<_> = (0..8).map(|i| (net.inputs[i], net.outputs[perm[i]])).collect();
    linkage.check(&net.graph, &pairs, 1)?;
    println!("B_3: {} vertices, max degree {}", net.graph.n(), net.graph.max_degree());
    for (pair, path) in linkage.iter() {
        println!("  {pair:?}: {path:?}");
    }

    let aug = BenesNetwork::augmented(3)?;
    let m = Matching::new(vec![(0, 1), (2, 7), (3, 5)])?;
    let linkage = augmented_link(3, &m)?;
    linkage.check(&aug.graph, m.edges(), 1)?;
    println!("augmented B_3 links {:?} with {} vertex-disjoint paths", m.edges(), linkage.len());

    print!("{}", format_network(&BenesNetwork::augmented(1)?));
    Ok(())
}
