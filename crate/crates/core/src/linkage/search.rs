use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::graph::{Graph, Linkage, Matching, Vertex};

/// Result of a budgeted linkage search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Linkage),
    /// The whole search space was exhausted: no uncongested linkage exists.
    NotFound,
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn found(self) -> Option<Linkage> {
        match self {
            SearchOutcome::Found(l) => Some(l),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

struct OutOfBudget;

struct Search<'g> {
    g: &'g Graph,
    pairs: Vec<(Vertex, Vertex)>,
    /// BFS distance to the target of each pair, in the unrestricted graph.
    dist: Vec<Vec<usize>>,
    /// Pair index owning each terminal.
    owner: Vec<usize>,
    used: Vec<bool>,
    paths: Vec<Vec<Vertex>>,
    nodes: u64,
    budget: u64,
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<Vertex>,
}

const FREE: usize = usize::MAX;

impl Search<'_> {
    fn passable(&self, v: Vertex, pair: usize) -> bool {
        !self.used[v] && (self.owner[v] == FREE || self.owner[v] == pair)
    }

    /// Is `to` reachable from `from` through vertices passable for `pair`?
    fn reachable(&mut self, from: Vertex, to: Vertex, pair: usize) -> bool {
        if from == to {
            return true;
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.queue.clear();
        self.queue.push(from);
        self.stamp[from] = self.epoch;
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &w in self.g.neighbors(v) {
                if w == to {
                    return true;
                }
                if self.stamp[w] != self.epoch && self.passable(w, pair) {
                    self.stamp[w] = self.epoch;
                    self.queue.push(w);
                }
            }
        }
        false
    }

    fn solve(&mut self, i: usize) -> std::result::Result<bool, OutOfBudget> {
        if i == self.pairs.len() {
            return Ok(true);
        }
        for j in i..self.pairs.len() {
            let (s, t) = self.pairs[j];
            if !self.reachable(s, t, j) {
                return Ok(false);
            }
        }
        let (s, _) = self.pairs[i];
        self.used[s] = true;
        self.paths[i].push(s);
        let ok = self.extend(i, s)?;
        if !ok {
            self.paths[i].pop();
            self.used[s] = false;
        }
        Ok(ok)
    }

    fn extend(&mut self, i: usize, head: Vertex) -> std::result::Result<bool, OutOfBudget> {
        let t = self.pairs[i].1;
        if head == t {
            return self.solve(i + 1);
        }
        let mut next: Vec<Vertex> = self
            .g
            .neighbors(head)
            .iter()
            .copied()
            .filter(|&w| self.passable(w, i))
            .collect();
        next.sort_by_key(|&w| (self.dist[i][w], Reverse(w == t)));
        for w in next {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OutOfBudget);
            }
            self.used[w] = true;
            self.paths[i].push(w);
            if (w == t || self.reachable(w, t, i)) && self.extend(i, w)? {
                return Ok(true);
            }
            self.paths[i].pop();
            self.used[w] = false;
        }
        Ok(false)
    }
}

/// Depth-first search for an uncongested `M`-linkage in `g`.
///
/// Pairs are routed shortest-first; each path is grown towards its target
/// by BFS distance and never enters another pair's terminal. Whenever a path
/// is completed, all remaining pairs must still be connected. The search is
/// exhaustive, so `NotFound` is a proof of non-existence. `budget` caps the
/// number of path extensions tried.
pub fn find_linkage_backtracking(g: &Graph, m: &Matching, budget: u64) -> Result<SearchOutcome> {
    let n = g.n();
    if let Some(v) = m.vertices().find(|&v| v >= n) {
        return Err(Error::invalid(format!("matching endpoint {v} is not a vertex")));
    }
    let mut order: Vec<(usize, (Vertex, Vertex), Vec<usize>)> = m
        .edges()
        .iter()
        .enumerate()
        .map(|(k, &(u, v))| (k, (u, v), g.distances_from(v)))
        .collect();
    if order.iter().any(|(_, (u, _), d)| d[*u] == usize::MAX) {
        return Ok(SearchOutcome::NotFound);
    }
    order.sort_by_key(|(k, (u, _), d)| (d[*u], *k));

    let mut owner = vec![FREE; n];
    for (i, (_, (u, v), _)) in order.iter().enumerate() {
        owner[*u] = i;
        owner[*v] = i;
    }
    let mut search = Search {
        g,
        pairs: order.iter().map(|(_, p, _)| *p).collect(),
        dist: order.iter().map(|(_, _, d)| d.clone()).collect(),
        owner,
        used: vec![false; n],
        paths: vec![Vec::new(); order.len()],
        nodes: 0,
        budget,
        stamp: vec![0; n],
        epoch: 0,
        queue: Vec::new(),
    };
    match search.solve(0) {
        Err(OutOfBudget) => Ok(SearchOutcome::BudgetExceeded),
        Ok(false) => Ok(SearchOutcome::NotFound),
        Ok(true) => {
            let mut slots: Vec<Option<((Vertex, Vertex), Vec<Vertex>)>> = vec![None; order.len()];
            for (i, (k, pair, _)) in order.iter().enumerate() {
                slots[*k] = Some((*pair, std::mem::take(&mut search.paths[i])));
            }
            let mut linkage = Linkage::new();
            for (pair, path) in slots.into_iter().flatten() {
                linkage.push(pair, path);
            }
            Ok(SearchOutcome::Found(linkage))
        }
    }
}
