use itertools::Itertools;

use super::{
    appendix, certify_with, find_linkage_backtracking, Certification, LinkedSetWitness, Router,
    SearchOutcome, WitnessStatus,
};
use crate::error::Result;
use crate::graph::{Blowup, BlowupVertex, Graph};

/// A matching-linked set in `H ⊗ J_t`, as large as can be established.
///
/// Within the exhaustive envelope (`k ≤ 4`, `t ≤ 2`) every candidate set is
/// tried up to clone symmetry, i.e. one set per vector of block occupancies
/// `(c_w)_{w ∈ V(H)}` with `c_w ≤ t`, largest first, and each is checked with
/// the exhaustive linkage procedure; the result is a maximum. Beyond the
/// envelope, clones are added greedily while backtracking still certifies the
/// set, which yields a certified but possibly smaller set.
pub fn max_matching_linked_set(h: &Graph, t: usize, budget: u64) -> Result<LinkedSetWitness> {
    let b = Blowup::new(h, t)?;
    if h.n() <= appendix::MAX_BASE_VERTICES && t <= appendix::MAX_ORDER {
        let mut vectors: Vec<Vec<usize>> = (0..h.n())
            .map(|_| 0..=t)
            .multi_cartesian_product()
            .collect();
        if h.n() == 0 {
            vectors = vec![Vec::new()];
        }
        vectors.sort_by_key(|c| std::cmp::Reverse(c.iter().sum::<usize>()));
        for counts in vectors {
            let set = occupancy_set(&counts);
            let ids: Vec<_> = set.iter().map(|&v| b.id(v)).collect();
            let classes: Vec<_> = set.iter().map(|v| v.base).collect();
            let cert = certify_with(&ids, Some(&classes), |m| {
                Ok(match appendix::appendix_linkage(h, t, m)? {
                    Some(_) => SearchOutcome::Found(Default::default()),
                    None => SearchOutcome::NotFound,
                })
            })?;
            if let Certification::Certified { matchings_checked } = cert {
                return Ok(LinkedSetWitness::new(
                    h.clone(),
                    t,
                    set,
                    Router::AppendixEnumeration,
                    WitnessStatus::Certified {
                        maximum: true,
                        matchings_checked,
                    },
                ));
            }
        }
        unreachable!("the empty set is always matching-linked");
    }

    let host = b.graph();
    let mut counts = vec![0usize; h.n()];
    let mut checked = 1;
    loop {
        let mut grew = false;
        for w in 0..h.n() {
            if counts[w] == t {
                continue;
            }
            counts[w] += 1;
            let set = occupancy_set(&counts);
            let ids: Vec<_> = set.iter().map(|&v| b.id(v)).collect();
            let classes: Vec<_> = set.iter().map(|v| v.base).collect();
            match certify_with(&ids, Some(&classes), |m| find_linkage_backtracking(&host, m, budget))? {
                Certification::Certified { matchings_checked } => {
                    checked = matchings_checked;
                    grew = true;
                }
                _ => counts[w] -= 1,
            }
        }
        if !grew {
            break;
        }
    }
    Ok(LinkedSetWitness::new(
        h.clone(),
        t,
        occupancy_set(&counts),
        Router::Backtracking,
        WitnessStatus::Certified {
            maximum: false,
            matchings_checked: checked,
        },
    ))
}

fn occupancy_set(counts: &[usize]) -> Vec<BlowupVertex> {
    counts
        .iter()
        .enumerate()
        .flat_map(|(base, &c)| (0..c).map(move |clone| BlowupVertex { base, clone }))
        .collect()
}
