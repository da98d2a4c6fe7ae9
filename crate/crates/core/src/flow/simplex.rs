//! Revised primal simplex over exact rationals for `max cᵀx, Ax ≤ b, x ≥ 0`
//! with `b ≥ 0`, so the all-slack basis is feasible and no phase one is needed.
//! Columns are sparse with small integer entries.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Smallest improving index enters; smallest basic index leaves on ties.
    #[default]
    Bland,
    /// Largest reduced cost enters. Falls back to Bland during long runs of
    /// degenerate pivots so that it cannot cycle.
    Dantzig,
}

#[derive(Clone, Debug)]
pub struct Column {
    pub cost: i64,
    pub entries: Vec<(usize, i64)>,
}

#[derive(Clone, Debug)]
pub struct Lp {
    pub rows: usize,
    pub rhs: Vec<i64>,
    pub columns: Vec<Column>,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub x: Vec<BigRational>,
    /// Row prices `π ≥ 0` with `Aᵀπ ≥ c` and `bᵀπ = cᵀx`.
    pub duals: Vec<BigRational>,
    pub objective: BigRational,
    pub pivots: usize,
}

impl Lp {
    pub fn solve(&self, rule: PivotRule) -> Result<LpSolution> {
        let m = self.rows;
        let n = self.columns.len();
        if self.rhs.len() != m || self.rhs.iter().any(|&b| b < 0) {
            return Err(Error::invalid("right-hand side must be nonnegative, one entry per row"));
        }
        let mut binv: Vec<Vec<BigRational>> = (0..m)
            .map(|i| (0..m).map(|j| ratio::int(i64::from(i == j))).collect())
            .collect();
        let mut xb: Vec<BigRational> = self.rhs.iter().map(|&b| ratio::int(b)).collect();
        let mut basis: Vec<usize> = (n..n + m).collect();
        let mut is_basic = vec![false; n + m];
        for &j in &basis {
            is_basic[j] = true;
        }
        let cost = |j: usize| if j < n { self.columns[j].cost } else { 0 };

        let mut pivots = 0;
        let mut degenerate_run = 0;
        loop {
            let mut pi = vec![BigRational::zero(); m];
            for (k, &j) in basis.iter().enumerate() {
                let c = cost(j);
                if c != 0 {
                    for (p, b) in pi.iter_mut().zip(&binv[k]) {
                        *p += b * ratio::int(c);
                    }
                }
            }
            let reduced = |j: usize| -> BigRational {
                if j < n {
                    let col = &self.columns[j];
                    let mut d = ratio::int(col.cost);
                    for &(r, a) in &col.entries {
                        if !pi[r].is_zero() {
                            d -= &pi[r] * ratio::int(a);
                        }
                    }
                    d
                } else {
                    -pi[j - n].clone()
                }
            };

            let bland = rule == PivotRule::Bland || degenerate_run > 2 * m;
            let mut entering: Option<(usize, BigRational)> = None;
            for j in (0..n + m).filter(|&j| !is_basic[j]) {
                let d = reduced(j);
                if !d.is_positive() {
                    continue;
                }
                if bland {
                    entering = Some((j, d));
                    break;
                }
                if entering.as_ref().is_none_or(|(_, best)| d > *best) {
                    entering = Some((j, d));
                }
            }
            let Some((j, _)) = entering else {
                let mut x = vec![BigRational::zero(); n];
                for (k, &b) in basis.iter().enumerate() {
                    if b < n {
                        x[b] = xb[k].clone();
                    }
                }
                let objective = x
                    .iter()
                    .zip(&self.columns)
                    .map(|(v, c)| v * ratio::int(c.cost))
                    .sum();
                return Ok(LpSolution { x, duals: pi, objective, pivots });
            };

            let alpha: Vec<BigRational> = (0..m)
                .map(|k| {
                    if j < n {
                        self.columns[j]
                            .entries
                            .iter()
                            .map(|&(r, a)| &binv[k][r] * ratio::int(a))
                            .sum()
                    } else {
                        binv[k][j - n].clone()
                    }
                })
                .collect();
            let mut leave: Option<(usize, BigRational)> = None;
            for k in (0..m).filter(|&k| alpha[k].is_positive()) {
                let r = &xb[k] / &alpha[k];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => r < *best || (r == *best && basis[k] < basis[*l]),
                };
                if better {
                    leave = Some((k, r));
                }
            }
            let Some((r, step)) = leave else {
                return Err(Error::invalid("linear program is unbounded"));
            };
            degenerate_run = if step.is_zero() { degenerate_run + 1 } else { 0 };

            let pivot = alpha[r].clone();
            for v in binv[r].iter_mut() {
                *v /= &pivot;
            }
            xb[r] /= &pivot;
            let (row_r, xr) = (binv[r].clone(), xb[r].clone());
            for k in (0..m).filter(|&k| k != r && !alpha[k].is_zero()) {
                let f = &alpha[k];
                for (v, w) in binv[k].iter_mut().zip(&row_r) {
                    if !w.is_zero() {
                        *v -= f * w;
                    }
                }
                xb[k] -= f * &xr;
            }
            is_basic[basis[r]] = false;
            is_basic[j] = true;
            basis[r] = j;
            pivots += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(cost: i64, entries: &[(usize, i64)]) -> Column {
        Column { cost, entries: entries.to_vec() }
    }

    #[test]
    fn textbook_instance() {
        // max 3x + 2y, x + y ≤ 4, x + 3y ≤ 6, x ≤ 3  →  x = 3, y = 1, value 11
        let lp = Lp {
            rows: 3,
            rhs: vec![4, 6, 3],
            columns: vec![col(3, &[(0, 1), (1, 1), (2, 1)]), col(2, &[(0, 1), (1, 3)])],
        };
        for rule in [PivotRule::Bland, PivotRule::Dantzig] {
            let s = lp.solve(rule).unwrap();
            assert_eq!(s.objective, ratio::int(11));
            assert_eq!(s.x, vec![ratio::int(3), ratio::int(1)]);
            let dual: BigRational = s.duals.iter().zip(&lp.rhs).map(|(p, &b)| p * ratio::int(b)).sum();
            assert_eq!(dual, s.objective);
        }
    }

    #[test]
    fn fractional_optimum() {
        // max x + y, 2x + y ≤ 1, x + 2y ≤ 1  →  1/3 each
        let lp = Lp {
            rows: 2,
            rhs: vec![1, 1],
            columns: vec![col(1, &[(0, 2), (1, 1)]), col(1, &[(0, 1), (1, 2)])],
        };
        let s = lp.solve(PivotRule::Bland).unwrap();
        assert_eq!(s.objective, ratio::frac(2, 3));
        assert_eq!(s.duals, vec![ratio::frac(1, 3), ratio::frac(1, 3)]);
    }

    #[test]
    fn unbounded_is_an_error() {
        let lp = Lp { rows: 1, rhs: vec![1], columns: vec![col(1, &[(0, -1)])] };
        assert!(lp.solve(PivotRule::Bland).is_err());
    }
}
