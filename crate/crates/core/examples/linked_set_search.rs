//! Search for matching-linked sets in small blowups and turn them into
//! capacity bounds.

use linkagelab::graph::{Blowup, Graph, Matching};
use linkagelab::linkage::{
    appendix_linkage_oracle, capacity_from_witness, cybt_pattern, find_linkage_backtracking, max_matching_linked_set,
};
use linkagelab::ratio;

fn main() -> linkagelab::Result<()> {
    for (name, h) in [("P_3", Graph::path(3)), ("C_4", Graph::cycle(4)), ("K_4", Graph::complete(4))] {
        let w = max_matching_linked_set(&h, 2, 100_000)?;
        let bound = capacity_from_witness(&w)?;
        println!(
            "{name} ⊗ J_2: linked set of size {} (maximum: {}), γ ≥ {}",
            w.set.len(),
            w.is_maximum(),
            ratio::to_string(&bound.raw)
        );
    }

    // Both clone pairs of the path's ends, each through its own middle clone.
    let p3 = Graph::path(3);
    let b = Blowup::new(&p3, 2)?;
    let m = Matching::new(vec![(b.clone_of(0, 0), b.clone_of(2, 0)), (b.clone_of(0, 1), b.clone_of(2, 1))])?;
    let found = find_linkage_backtracking(&b.graph(), &m, 10_000)?.is_found();
    println!("P_3 ⊗ J_2 links both clone pairs: oracle {}, search {found}", appendix_linkage_oracle(&p3, 2, &m)?);

    let cybt = cybt_pattern(100)?;
    println!("k = 100: pattern B̌_{} padded to {} vertices, γ ≥ {}", cybt.level, cybt.graph.n(), ratio::to_string(&cybt.bound.raw));
    Ok(())
}
