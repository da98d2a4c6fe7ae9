use rayon::prelude::*;
use serde::Serialize;

use super::search::{find_linkage_backtracking, SearchOutcome};
use crate::error::Result;
use crate::graph::{Graph, Matching, Vertex};

/// Verdict of a matching-linkedness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Certification {
    Certified { matchings_checked: usize },
    Refuted { matching: Vec<(Vertex, Vertex)>, matchings_checked: usize },
    Inconclusive { matchings_checked: usize, over_budget: usize },
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified { .. })
    }

    pub fn matchings_checked(&self) -> usize {
        match *self {
            Certification::Certified { matchings_checked }
            | Certification::Refuted { matchings_checked, .. }
            | Certification::Inconclusive { matchings_checked, .. } => matchings_checked,
        }
    }
}

/// Every maximal matching on `set`: perfect if `|set|` is even, missing
/// exactly one vertex otherwise.
///
/// Vertices with equal `class` labels are treated as interchangeable and only
/// one matching per orbit is produced. Pass `None` to list all of them.
pub fn maximal_matchings(set: &[Vertex], class: Option<&[usize]>) -> Vec<Matching> {
    let mut out = Vec::new();
    matchings_leaving(set, class, set.len() % 2, &mut out);
    out
}

/// Every matching on `set`, the empty one included, up to the same symmetry
/// as [`maximal_matchings`].
pub fn all_matchings(set: &[Vertex], class: Option<&[usize]>) -> Vec<Matching> {
    let mut out = Vec::new();
    for singles in (0..=set.len()).rev().step_by(2) {
        matchings_leaving(set, class, singles, &mut out);
    }
    out
}

/// Matchings leaving exactly `singles` vertices of `set` unmatched.
fn matchings_leaving(set: &[Vertex], class: Option<&[usize]>, singles: usize, out: &mut Vec<Matching>) {
    let labels: Vec<usize> = match class {
        Some(c) => {
            assert_eq!(c.len(), set.len(), "one class label per vertex");
            c.to_vec()
        }
        None => (0..set.len()).collect(),
    };
    let mut distinct = labels.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let members: Vec<Vec<Vertex>> = distinct
        .iter()
        .map(|&c| {
            set.iter()
                .zip(&labels)
                .filter(|(_, &l)| l == c)
                .map(|(&v, _)| v)
                .collect()
        })
        .collect();
    let mut counts: Vec<usize> = members.iter().map(Vec::len).collect();
    let mut picks = Vec::new();
    enumerate(&mut counts, 0, 0, singles, &mut picks, &mut |picks: &[(usize, Option<usize>)]| {
        let mut next = vec![0; members.len()];
        let mut take = |c: usize| {
            let v = members[c][next[c]];
            next[c] += 1;
            v
        };
        let mut edges = Vec::new();
        for &(i, partner) in picks {
            let a = take(i);
            if let Some(j) = partner {
                edges.push((a, take(j)));
            }
        }
        out.push(Matching::from_trusted(edges));
    });
}

/// Walks classes in order; each vertex of the current class picks a code that
/// is at least the previous code in that class (0 = left single, `j + 1` =
/// paired with class `j ≥ i`).
fn enumerate(
    counts: &mut [usize],
    class: usize,
    min_code: usize,
    singles: usize,
    picks: &mut Vec<(usize, Option<usize>)>,
    emit: &mut dyn FnMut(&[(usize, Option<usize>)]),
) {
    let Some(i) = (class..counts.len()).find(|&c| counts[c] > 0) else {
        if singles == 0 {
            emit(picks);
        }
        return;
    };
    let min_code = if i == class { min_code } else { 0 };
    if min_code == 0 && singles > 0 {
        counts[i] -= 1;
        picks.push((i, None));
        enumerate(counts, i, 0, singles - 1, picks, emit);
        picks.pop();
        counts[i] += 1;
    }
    for j in i..counts.len() {
        let code = j + 1;
        if code < min_code {
            continue;
        }
        let need_same = if j == i { 2 } else { 1 };
        if counts[i] < need_same || (j != i && counts[j] == 0) {
            continue;
        }
        counts[i] -= 1;
        counts[j] -= 1;
        picks.push((i, Some(j)));
        enumerate(counts, i, code, singles, picks, emit);
        picks.pop();
        counts[j] += 1;
        counts[i] += 1;
    }
}

/// Runs `route` on every maximal matching on `set` (up to the given symmetry)
/// and aggregates the verdicts. Matchings are checked in parallel; the
/// reported counterexample is the first failing matching in enumeration order.
pub fn certify_with<F>(set: &[Vertex], class: Option<&[usize]>, route: F) -> Result<Certification>
where
    F: Fn(&Matching) -> Result<SearchOutcome> + Sync,
{
    let matchings = maximal_matchings(set, class);
    let outcomes: Vec<SearchOutcome> = matchings
        .par_iter()
        .map(&route)
        .collect::<Result<_>>()?;
    let checked = matchings.len();
    if let Some(k) = outcomes.iter().position(|o| *o == SearchOutcome::NotFound) {
        return Ok(Certification::Refuted {
            matching: matchings[k].edges().to_vec(),
            matchings_checked: checked,
        });
    }
    let over = outcomes
        .iter()
        .filter(|o| **o == SearchOutcome::BudgetExceeded)
        .count();
    if over > 0 {
        return Ok(Certification::Inconclusive {
            matchings_checked: checked,
            over_budget: over,
        });
    }
    Ok(Certification::Certified {
        matchings_checked: checked,
    })
}

/// Is `set` matching-linked in `g`? Only maximal matchings are tried, since a
/// linkage for a matching restricts to one for each of its sub-matchings.
pub fn is_matching_linked(g: &Graph, set: &[Vertex], budget: u64) -> Result<Certification> {
    certify_with(set, None, |m| find_linkage_backtracking(g, m, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benes::BenesNetwork;
    use std::collections::HashSet;

    fn double_factorial(n: usize) -> usize {
        (1..=n).rev().step_by(2).product()
    }

    #[test]
    fn maximal_matching_counts() {
        for x in 0..=8usize {
            let set: Vec<_> = (0..x).collect();
            let all = maximal_matchings(&set, None);
            let expected = if x % 2 == 0 {
                double_factorial(x.saturating_sub(1))
            } else if x == 1 {
                1
            } else {
                x * double_factorial(x - 2)
            };
            assert_eq!(all.len(), expected.max(1), "x = {x}");
            let distinct: HashSet<_> = all.iter().map(|m| {
                let mut e = m.edges().to_vec();
                e.sort_unstable();
                e
            }).collect();
            assert_eq!(distinct.len(), all.len());
        }
    }

    #[test]
    fn all_matching_counts() {
        // telephone numbers
        for (x, expected) in [1usize, 1, 2, 4, 10, 26, 76, 232, 764].into_iter().enumerate() {
            let set: Vec<_> = (0..x).collect();
            assert_eq!(all_matchings(&set, None).len(), expected, "x = {x}");
        }
        // {}, {aa}, {bb}, {ab}, {aa,bb}, {ab,ab}
        assert_eq!(all_matchings(&[0, 1, 2, 3], Some(&[0, 0, 1, 1])).len(), 6);
    }

    #[test]
    fn symmetry_reduces_to_orbits() {
        // two classes of two: {aa, bb} and {ab, ab}
        let set = [0, 1, 2, 3];
        let orbits = maximal_matchings(&set, Some(&[0, 0, 1, 1]));
        assert_eq!(orbits.len(), 2);
        // against brute force, compared orbit by orbit
        let orbits = maximal_matchings(&[0, 1, 2, 3, 4], Some(&[0, 0, 0, 1, 2]));
        let brute = maximal_matchings(&[0, 1, 2, 3, 4], None);
        let class = |v: usize| [0, 0, 0, 1, 2][v];
        let orbit_key = |m: &Matching| {
            let mut k: Vec<_> = m.edges().iter().map(|&(a, b)| {
                let (x, y) = (class(a), class(b));
                (x.min(y), x.max(y))
            }).collect();
            k.sort_unstable();
            k
        };
        let brute_orbits: HashSet<_> = brute.iter().map(orbit_key).collect();
        let ours: Vec<_> = orbits.iter().map(orbit_key).collect();
        assert_eq!(ours.len(), brute_orbits.len());
        assert_eq!(ours.into_iter().collect::<HashSet<_>>(), brute_orbits);
    }

    #[test]
    fn small_sets_are_certified() {
        let g = Graph::path(3);
        assert!(is_matching_linked(&g, &[], 10).unwrap().is_certified());
        assert!(is_matching_linked(&g, &[1], 10).unwrap().is_certified());
    }

    #[test]
    fn benes_inputs_are_linked() {
        let b = BenesNetwork::augmented(2).unwrap();
        let c = is_matching_linked(&b.graph, &b.inputs, 100_000).unwrap();
        assert_eq!(c, Certification::Certified { matchings_checked: 3 });
    }

    #[test]
    fn claw_with_center_is_refuted() {
        let g = Graph::star(3);
        let c = is_matching_linked(&g, &[0, 1, 2, 3], 1000).unwrap();
        let Certification::Refuted { matching, .. } = c else {
            panic!("expected refutation, got {c:?}");
        };
        let m = Matching::new(matching).unwrap();
        assert_eq!(find_linkage_backtracking(&g, &m, 1000).unwrap(), SearchOutcome::NotFound);
    }

    #[test]
    fn certified_sets_route_every_sub_matching() {
        let b = BenesNetwork::augmented(2).unwrap();
        for m in maximal_matchings(&b.inputs, None) {
            let l = find_linkage_backtracking(&b.graph, &m, 100_000).unwrap().found().unwrap();
            for k in 0..m.len() {
                let sub: Vec<_> = m.edges().iter().copied().enumerate().filter(|&(i, _)| i != k).map(|(_, e)| e).collect();
                let mut restricted = crate::graph::Linkage::new();
                for (pair, path) in l.paths() {
                    if sub.contains(pair) {
                        restricted.push(*pair, path.clone());
                    }
                }
                restricted.check(&b.graph, &sub, 1).unwrap();
            }
        }
    }
}
