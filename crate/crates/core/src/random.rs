//! Erdős–Rényi sampling and the random-equipartition routing experiment.
//!
//! All randomness comes from `ChaCha8Rng`. Trial `i` of a run with seed `s`
//! uses its own generator seeded with [`trial_seed`]`(s, i)`, so trials can
//! run in any order and a report is reproducible from its seed alone.

use num_integer::binomial;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Matching, Vertex};
use crate::linkage::{find_linkage_backtracking, CapacityBound, Provenance, SearchOutcome};
use crate::ratio;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer applied to `seed` and a counter.
pub fn trial_seed(seed: u64, counter: u64) -> u64 {
    let mut z = seed.wrapping_add(counter.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("p = {p} is not a probability")))
    }
}

/// `G(k, p)`: every pair independently with probability `p`.
pub fn sample_gnp(k: usize, p: f64, seed: u64) -> Result<Graph> {
    check_p(p)?;
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for v in 1..k {
        for u in 0..v {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_distinct_edges(k, edges))
}

/// `G(k, m)`: a uniform graph with exactly `m` edges.
pub fn sample_gnm(k: usize, m: usize, seed: u64) -> Result<Graph> {
    let pairs = binomial(k, 2);
    if m > pairs {
        return Err(Error::invalid(format!("{m} edges do not fit on {k} vertices")));
    }
    let mut rng = rng(seed);
    let edges = index::sample(&mut rng, pairs, m)
        .into_iter()
        .map(pair_of_index)
        .collect();
    Ok(Graph::from_distinct_edges(k, edges))
}

/// A random connected graph on `n` vertices with maximum degree at most
/// `max_degree ≥ 2`: a random tree grown under the degree cap, plus up to
/// `extra` random edges that respect it.
pub fn sample_connected_bounded(n: usize, max_degree: usize, extra: usize, seed: u64) -> Result<Graph> {
    if max_degree < 2 && n > 2 {
        return Err(Error::invalid("a connected graph on more than two vertices needs degree 2"));
    }
    let mut rng = rng(seed);
    let mut g = Graph::new(n);
    if n < 2 {
        return Ok(g);
    }
    for v in 1..n {
        let open: Vec<Vertex> = (0..v).filter(|&u| g.degree(u) < max_degree).collect();
        let u = open[rng.random_range(0..open.len())];
        g.add_edge(u, v)?;
    }
    for _ in 0..extra {
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        if u != v && g.degree(u) < max_degree && g.degree(v) < max_degree {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Inverse of the ordering where pair `i < j` has index `j(j−1)/2 + i`.
fn pair_of_index(idx: usize) -> (Vertex, Vertex) {
    let mut j = ((2.0 * idx as f64).sqrt() as usize).max(1);
    while j * (j + 1) / 2 <= idx {
        j += 1;
    }
    while j * (j - 1) / 2 > idx {
        j -= 1;
    }
    (idx - j * (j - 1) / 2, j)
}

/// A uniformly random maximal matching on `0..k`.
pub fn sample_perfect_matching(k: usize, seed: u64) -> Matching {
    let mut order: Vec<Vertex> = (0..k).collect();
    order.shuffle(&mut rng(seed));
    Matching::new(order.chunks_exact(2).map(|c| (c[0], c[1])).collect()).expect("disjoint pairs")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialOutcome {
    Success,
    Failure,
    /// Some part ran out of search budget and no part failed outright.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trial {
    pub seed: u64,
    pub part_sizes: Vec<usize>,
    pub outcome: TrialOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub k: usize,
    /// Edge probability, when `H` was sampled from `G(k, p)`.
    pub p: Option<f64>,
    pub matching_size: usize,
    pub r: usize,
    pub trials: usize,
    pub successes: usize,
    pub failures: usize,
    pub inconclusive: usize,
    pub seed: u64,
    pub per_trial: Vec<Trial>,
    /// Successes over conclusive trials.
    pub success_rate: Option<f64>,
    /// 95% Wilson score interval for `success_rate`.
    pub wilson: Option<(f64, f64)>,
}

/// 95% Wilson score interval for `successes` out of `n`.
pub fn wilson_interval(successes: usize, n: usize) -> Option<(f64, f64)> {
    if n == 0 {
        return None;
    }
    let z = 1.959_963_984_540_054_f64;
    let (n, ph) = (n as f64, successes as f64 / n as f64);
    let denom = 1.0 + z * z / n;
    let centre = (ph + z * z / (2.0 * n)) / denom;
    let half = z * ((ph * (1.0 - ph) + z * z / (4.0 * n)) / n).sqrt() / denom;
    Some(((centre - half).max(0.0), (centre + half).min(1.0)))
}

/// Splits `M` into `r` random parts of nearly equal size and asks for an
/// uncongested linkage of every part in `H`, once per trial.
///
/// As in the random-graph argument, `M` is first padded to a perfect matching
/// by pairing unmatched vertices; for odd `k` the smallest unmatched vertex
/// `w` is set aside and routing happens in `H − w`. Padding edges are dropped
/// again before routing.
pub fn equipartition_experiment(
    h: &Graph,
    m: &Matching,
    r: usize,
    trials: usize,
    seed: u64,
    budget: u64,
) -> Result<ExperimentReport> {
    if r == 0 {
        return Err(Error::invalid("r must be at least 1"));
    }
    let k = h.n();
    if m.vertices().any(|v| v >= k) {
        return Err(Error::invalid("matching uses a vertex outside H"));
    }
    let mut covered = vec![false; k];
    m.vertices().for_each(|v| covered[v] = true);
    let mut free: Vec<Vertex> = (0..k).filter(|&v| !covered[v]).collect();
    let (host, to_host) = if k % 2 == 1 {
        let w = free.remove(0);
        let keep: Vec<Vertex> = (0..k).filter(|&v| v != w).collect();
        let mut to_host = vec![usize::MAX; k];
        keep.iter().enumerate().for_each(|(i, &v)| to_host[v] = i);
        (h.induced(&keep), to_host)
    } else {
        (h.clone(), (0..k).collect())
    };
    let mut padded: Vec<((Vertex, Vertex), bool)> = m.edges().iter().map(|&e| (e, true)).collect();
    padded.extend(free.chunks_exact(2).map(|c| ((c[0], c[1]), false)));

    let per_trial: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(seed, i as u64);
            let mut order = padded.clone();
            order.shuffle(&mut rng(seed));
            let mut parts = vec![Vec::new(); r];
            for (j, &(e, real)) in order.iter().enumerate() {
                if real {
                    parts[j % r].push((to_host[e.0], to_host[e.1]));
                }
            }
            let mut outcome = TrialOutcome::Success;
            for part in &parts {
                match find_linkage_backtracking(&host, &Matching::new(part.clone())?, budget)? {
                    SearchOutcome::Found(_) => {}
                    SearchOutcome::NotFound => {
                        outcome = TrialOutcome::Failure;
                        break;
                    }
                    SearchOutcome::BudgetExceeded => outcome = TrialOutcome::Inconclusive,
                }
            }
            Ok(Trial { seed, part_sizes: parts.iter().map(Vec::len).collect(), outcome })
        })
        .collect::<Result<_>>()?;

    let count = |o| per_trial.iter().filter(|t| t.outcome == o).count();
    let (successes, failures, inconclusive) =
        (count(TrialOutcome::Success), count(TrialOutcome::Failure), count(TrialOutcome::Inconclusive));
    let conclusive = successes + failures;
    Ok(ExperimentReport {
        k,
        p: None,
        matching_size: m.len(),
        r,
        trials,
        successes,
        failures,
        inconclusive,
        seed,
        per_trial,
        success_rate: (conclusive > 0).then(|| successes as f64 / conclusive as f64),
        wilson: wilson_interval(successes, conclusive),
    })
}

/// Samples `H ~ G(k, p)` and a random maximal matching from `seed`, then runs
/// [`equipartition_experiment`].
pub fn gnp_experiment(k: usize, p: f64, r: usize, trials: usize, seed: u64, budget: u64) -> Result<ExperimentReport> {
    let h = sample_gnp(k, p, trial_seed(seed, u64::MAX))?;
    let m = sample_perfect_matching(k, trial_seed(seed, u64::MAX - 1));
    let mut report = equipartition_experiment(&h, &m, r, trials, seed, budget)?;
    report.p = Some(p);
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct RandomCapacity {
    pub k: usize,
    pub p: f64,
    /// Smallest `r′` for which every sampled matching was routed, if any.
    pub r_prime: Option<usize>,
    pub bound: CapacityBound,
    /// One report per `r′` tried.
    pub reports: Vec<ExperimentReport>,
}

/// Empirical capacity of one `H ~ G(k, p)`: the smallest `r′` such that a
/// fresh random matching and equipartition into `r′` parts routes in every
/// trial, giving `γ(H) ≥ k/(3·2r′)` for the clone-1 set of `H ⊗ J_{2r′}`.
/// This is a sample, not a certificate.
pub fn estimate_random_capacity(k: usize, p: f64, trials: usize, seed: u64) -> Result<RandomCapacity> {
    const BUDGET: u64 = 200_000;
    let h = sample_gnp(k, p, trial_seed(seed, u64::MAX))?;
    let mut reports = Vec::new();
    let mut r_prime = None;
    for r in 1..=(k / 2).max(1) {
        let runs: Vec<ExperimentReport> = (0..trials)
            .map(|i| {
                let s = trial_seed(seed, (r * trials + i) as u64);
                let m = sample_perfect_matching(k, s);
                equipartition_experiment(&h, &m, r, 1, s, BUDGET)
            })
            .collect::<Result<_>>()?;
        let successes = runs.iter().map(|x| x.successes).sum();
        let failures = runs.iter().map(|x| x.failures).sum();
        let inconclusive = runs.iter().map(|x| x.inconclusive).sum();
        let report = ExperimentReport {
            k,
            p: Some(p),
            matching_size: k / 2,
            r,
            trials,
            successes,
            failures,
            inconclusive,
            seed,
            per_trial: runs.into_iter().flat_map(|x| x.per_trial).collect(),
            success_rate: (successes + failures > 0).then(|| successes as f64 / (successes + failures) as f64),
            wilson: wilson_interval(successes, successes + failures),
        };
        let done = successes == trials;
        reports.push(report);
        if done {
            r_prime = Some(r);
            break;
        }
    }
    let raw = match r_prime {
        Some(r) => ratio::frac(k as u64, 6 * r as u64),
        None => ratio::int(0),
    };
    Ok(RandomCapacity { k, p, r_prime, bound: CapacityBound::new(raw, Provenance::Empirical), reports })
}
