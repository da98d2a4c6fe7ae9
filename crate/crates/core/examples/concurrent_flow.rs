//! The concurrent flow value ε(H, W), its integral scaling and the capacity
//! bound that the flow-derived witness certifies.

use linkagelab::flow::{flow_capacity_certificate, integralize, solve_concurrent_flow};
use linkagelab::graph::Graph;
use linkagelab::ratio;

fn main() -> linkagelab::Result<()> {
    for (name, h) in [("K_2", Graph::complete(2)), ("P_3", Graph::path(3)), ("C_5", Graph::cycle(5)), ("K_4", Graph::complete(4))] {
        let w: Vec<_> = (0..h.n()).collect();
        let s = solve_concurrent_flow(&h, &w)?;
        s.verify(&h)?;
        let clique = integralize(&s)?;
        clique.check()?;
        println!("{name}: ε = {}, D = {}, q = {}", ratio::to_string(&s.epsilon), clique.d, clique.q);
    }

    let cert = flow_capacity_certificate(&Graph::complete(3), &[0, 1, 2])?;
    println!(
        "K_3: |X| = {} in K_3 ⊗ J_{}, checked {:?}, γ ≥ {}",
        cert.witness.set.len(),
        cert.witness.q,
        cert.scope,
        ratio::to_string(&cert.bound.raw)
    );
    Ok(())
}
