use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::enumerate_paths;
use super::simplex::{Column, Lp, PivotRule};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::ratio;

/// Simple paths enumerated per commodity before giving up.
pub const PATH_CAP: usize = 5_000;
/// Path variables in one LP before giving up.
pub const COLUMN_CAP: usize = 40_000;

/// Positive flow on one path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFlow {
    pub commodity: (Vertex, Vertex),
    pub path: Vec<Vertex>,
    pub value: BigRational,
}

/// An optimal solution of the concurrent flow LP with unit vertex
/// capacities, together with the optimal dual prices that certify it.
///
/// Commodities are all ordered pairs of `W²`, the diagonal included.
#[derive(Clone, Debug)]
pub struct FlowSolution {
    pub terminals: Vec<Vertex>,
    pub epsilon: BigRational,
    /// Nonzero path variables, by commodity and then in enumeration order.
    pub flows: Vec<PathFlow>,
    /// Dual price of each vertex capacity.
    pub vertex_prices: Vec<BigRational>,
    /// Dual price of each commodity's demand, in `commodities()` order.
    pub commodity_prices: Vec<BigRational>,
    pub pivots: usize,
}

impl FlowSolution {
    pub fn commodities(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        commodities(&self.terminals)
    }

    /// Total flow of a commodity.
    pub fn shipped(&self, u: Vertex, v: Vertex) -> BigRational {
        self.flows
            .iter()
            .filter(|f| f.commodity == (u, v))
            .map(|f| f.value.clone())
            .sum()
    }

    /// Checks primal feasibility, dual feasibility against every path of `h`
    /// and a zero duality gap. Returns the first violated condition.
    pub fn verify(&self, h: &Graph) -> Result<()> {
        let fail = |msg: String| Err(Error::verification(msg));
        let mut load = vec![BigRational::zero(); h.n()];
        for f in &self.flows {
            if f.value.is_negative() {
                return fail(format!("negative flow on {:?}", f.path));
            }
            let (u, v) = f.commodity;
            if f.path.first() != Some(&u) || f.path.last() != Some(&v) {
                return fail(format!("path {:?} does not join {u} and {v}", f.path));
            }
            if f.path.windows(2).any(|e| !h.has_edge(e[0], e[1])) {
                return fail(format!("{:?} is not a path of H", f.path));
            }
            for &w in &f.path {
                load[w] += &f.value;
            }
        }
        if let Some(w) = (0..h.n()).find(|&w| load[w] > ratio::int(1)) {
            return fail(format!("vertex {w} carries {}", ratio::to_string(&load[w])));
        }
        for (u, v) in self.commodities() {
            if self.shipped(u, v) < self.epsilon {
                return fail(format!("commodity ({u},{v}) ships less than ε"));
            }
        }

        if self.vertex_prices.iter().chain(&self.commodity_prices).any(|p| p.is_negative()) {
            return fail("negative dual price".into());
        }
        if self.commodity_prices.iter().sum::<BigRational>() < ratio::int(1) {
            return fail("commodity prices sum to less than 1".into());
        }
        for ((u, v), z) in self.commodities().zip(&self.commodity_prices) {
            for p in enumerate_paths(h, u, v, PATH_CAP)? {
                let price: BigRational = p.iter().map(|&w| &self.vertex_prices[w]).sum();
                if price < *z {
                    return fail(format!("path {p:?} is cheaper than its commodity price"));
                }
            }
        }
        let dual: BigRational = self.vertex_prices.iter().sum();
        if dual != self.epsilon {
            return fail(format!(
                "duality gap: primal {} vs dual {}",
                ratio::to_string(&self.epsilon),
                ratio::to_string(&dual)
            ));
        }
        Ok(())
    }
}

fn commodities(w: &[Vertex]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    w.iter().flat_map(move |&u| w.iter().map(move |&v| (u, v)))
}

/// The exact value `ε(H, W)` with an optimal path flow.
pub fn solve_concurrent_flow(h: &Graph, w: &[Vertex]) -> Result<FlowSolution> {
    solve_with_rule(h, w, PivotRule::Bland)
}

pub fn solve_with_rule(h: &Graph, w: &[Vertex], rule: PivotRule) -> Result<FlowSolution> {
    let mut terminals = w.to_vec();
    terminals.sort_unstable();
    terminals.dedup();
    if terminals.is_empty() {
        return Err(Error::invalid("terminal set is empty"));
    }
    if let Some(&v) = terminals.iter().find(|&&v| v >= h.n()) {
        return Err(Error::invalid(format!("terminal {v} is not a vertex")));
    }
    let pairs: Vec<_> = commodities(&terminals).collect();
    let paths: Vec<Vec<Vec<Vertex>>> = pairs
        .par_iter()
        .map(|&(u, v)| enumerate_paths(h, u, v, PATH_CAP))
        .collect::<Result<_>>()?;
    let total: usize = paths.iter().map(Vec::len).sum();
    if total > COLUMN_CAP {
        return Err(Error::envelope(format!(
            "{total} path variables, more than {COLUMN_CAP}"
        )));
    }

    // rows: one demand row per commodity (ε − Σ x_p ≤ 0), then one capacity
    // row per vertex; column 0 is ε
    let c = pairs.len();
    let mut columns = vec![Column { cost: 1, entries: (0..c).map(|i| (i, 1)).collect() }];
    let mut owner = Vec::with_capacity(total);
    for (i, ps) in paths.iter().enumerate() {
        for (k, p) in ps.iter().enumerate() {
            let mut entries = vec![(i, -1)];
            entries.extend(p.iter().map(|&x| (c + x, 1)));
            columns.push(Column { cost: 0, entries });
            owner.push((i, k));
        }
    }
    let mut rhs = vec![0; c];
    rhs.extend(std::iter::repeat_n(1, h.n()));
    let lp = Lp { rows: c + h.n(), rhs, columns };
    let sol = lp.solve(rule)?;

    let mut flows = Vec::new();
    for (x, &(i, k)) in sol.x[1..].iter().zip(&owner) {
        if !x.is_zero() {
            flows.push(PathFlow { commodity: pairs[i], path: paths[i][k].clone(), value: x.clone() });
        }
    }
    let solution = FlowSolution {
        epsilon: sol.x[0].clone(),
        commodity_prices: sol.duals[..c].to_vec(),
        vertex_prices: sol.duals[c..].to_vec(),
        terminals,
        flows,
        pivots: sol.pivots,
    };
    let t = solution.terminals.len();
    if t >= 2 && solution.epsilon > ratio::frac(1, t as u64) {
        return Err(Error::verification(format!(
            "ε = {} exceeds 1/|W|",
            ratio::to_string(&solution.epsilon)
        )));
    }
    solution.verify(h)?;
    Ok(solution)
}
