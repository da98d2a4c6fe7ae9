use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::FlowSolution;
use crate::error::{Error, Result};
use crate::graph::{Linkage, Vertex};
use crate::ratio;

/// `q` paths for every pair of distinct terminals, each vertex on at most
/// `D` of them.
#[derive(Clone, Debug)]
pub struct CongestedCliqueLinkage {
    pub d: usize,
    pub q: usize,
    pub terminals: Vec<Vertex>,
    /// Pairs `(u, v)` with `u < v`, `q` consecutive paths per pair in
    /// terminal order.
    pub linkage: Linkage,
}

impl CongestedCliqueLinkage {
    /// The paths for `{u, v}`, oriented from `u`.
    pub fn paths_between(&self, u: Vertex, v: Vertex) -> impl Iterator<Item = Vec<Vertex>> + '_ {
        let key = crate::graph::ordered(u, v);
        self.linkage.iter().filter(move |(p, _)| **p == key).map(move |(_, path)| {
            let mut path = path.to_vec();
            if path[0] != u {
                path.reverse();
            }
            path
        })
    }

    pub fn check(&self) -> Result<()> {
        let t = self.terminals.len();
        if self.linkage.len() != self.q * t * (t - 1) / 2 {
            return Err(Error::verification("wrong number of clique paths"));
        }
        for (i, &u) in self.terminals.iter().enumerate() {
            for &v in &self.terminals[i + 1..] {
                let count = self.paths_between(u, v).count();
                if count != self.q {
                    return Err(Error::verification(format!("{u}-{v} has {count} paths, not {}", self.q)));
                }
            }
        }
        let worst = self.linkage.max_congestion();
        if worst > self.d {
            return Err(Error::verification(format!("congestion {worst} exceeds D = {}", self.d)));
        }
        Ok(())
    }
}

/// Scales an optimal flow by the common denominator `D` and keeps the first
/// `q = D·ε` unit paths of each commodity `(u, v)`, `u < v`.
pub fn integralize(s: &FlowSolution) -> Result<CongestedCliqueLinkage> {
    let values = s.flows.iter().map(|f| &f.value).chain([&s.epsilon]);
    let d_big = ratio::common_denominator(values);
    let scaled = &s.epsilon * ratio::int(d_big.clone());
    let small = |x: &BigInt, what: &str| {
        x.to_usize()
            .ok_or_else(|| Error::envelope(format!("{what} = {x} does not fit in memory")))
    };
    let d = small(&d_big, "D")?;
    let q = small(&scaled.to_integer(), "q")?;

    let mut linkage = Linkage::new();
    for (i, &u) in s.terminals.iter().enumerate() {
        for &v in &s.terminals[i + 1..] {
            let mut left = q;
            for f in s.flows.iter().filter(|f| f.commodity == (u, v)) {
                let copies = small(&(&f.value * ratio::int(d_big.clone())).to_integer(), "D·x")?;
                for _ in 0..copies.min(left) {
                    linkage.push((u, v), f.path.clone());
                }
                left -= copies.min(left);
                if left == 0 {
                    break;
                }
            }
        }
    }
    let out = CongestedCliqueLinkage { d, q, terminals: s.terminals.clone(), linkage };
    out.check()?;
    Ok(out)
}
