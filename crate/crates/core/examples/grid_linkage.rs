//! Diagonal linkages in the grid: 2-congested in the grid itself and
//! uncongested once every cell is doubled.

use linkagelab::graph::{grid_vertex, Blowup, Graph, Matching};
use linkagelab::linkage::{grid_blowup2_linkage, grid_capacity_bound, grid_diagonal_linkage};
use linkagelab::ratio;

fn main() -> linkagelab::Result<()> {
    let side = 6;
    let d = |i| grid_vertex(side, i, i);
    let m = Matching::new(vec![(d(0), d(5)), (d(1), d(3)), (d(2), d(4))])?;

    let grid = Graph::grid(side);
    let flat = grid_diagonal_linkage(side, &m)?;
    flat.check(&grid, m.edges(), 2)?;
    println!("congestion in the {side}x{side} grid: {}", flat.max_congestion());

    let b = Blowup::new(&grid, 2)?;
    let lifted = grid_blowup2_linkage(side, &m)?;
    let pairs: Vec<_> = m.edges().iter().map(|&(u, v)| (b.clone_of(u, 0), b.clone_of(v, 0))).collect();
    lifted.check(&b, &pairs, 1)?;
    println!("congestion after doubling: {}", lifted.max_congestion());

    for side in 2..=8 {
        let bound = grid_capacity_bound(side)?;
        println!("γ(grid {side}) ≥ {}", ratio::to_string(&bound.raw));
    }
    Ok(())
}
