use std::collections::{HashMap, HashSet};

use super::{ordered, Adjacency, Vertex};
use crate::error::{Error, Result};

/// A set of pairwise vertex-disjoint pairs. The pairs need not be edges of any
/// host graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: Vec<(Vertex, Vertex)>,
}

impl Matching {
    pub fn new(edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(Error::invalid(format!("matching pair {u}-{u} is a loop")));
            }
            for x in [u, v] {
                if !seen.insert(x) {
                    return Err(Error::invalid(format!(
                        "vertex {x} is covered twice by the matching"
                    )));
                }
            }
            out.push(ordered(u, v));
        }
        Ok(Matching { edges: out })
    }

    pub(crate) fn from_trusted(edges: Vec<(Vertex, Vertex)>) -> Self {
        debug_assert!(Matching::new(edges.clone()).is_ok());
        Matching {
            edges: edges.into_iter().map(|(u, v)| ordered(u, v)).collect(),
        }
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.edges.iter().flat_map(|&(u, v)| [u, v])
    }

    /// `true` if every endpoint lies in `set`.
    pub fn is_on(&self, set: &[Vertex]) -> bool {
        let set: HashSet<_> = set.iter().copied().collect();
        self.vertices().all(|v| set.contains(&v))
    }
}

/// Why a path system fails a linkage predicate.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinkageViolation {
    #[error("no path for pair {0:?}")]
    MissingPath((Vertex, Vertex)),
    #[error("path for {0:?} does not correspond to a requested pair")]
    UnexpectedPath((Vertex, Vertex)),
    #[error("path for {0:?} has the wrong endpoints")]
    WrongEndpoints((Vertex, Vertex)),
    #[error("path for {pair:?} uses the non-edge {from}-{to}")]
    NotAnEdge {
        pair: (Vertex, Vertex),
        from: Vertex,
        to: Vertex,
    },
    #[error("path for {pair:?} revisits vertex {vertex}")]
    NotSimple { pair: (Vertex, Vertex), vertex: Vertex },
    #[error("vertex {vertex} lies on {load} paths, limit {limit}")]
    Congested {
        vertex: Vertex,
        load: usize,
        limit: usize,
    },
    #[error("interior vertex {0} is shared or is a branch vertex")]
    InteriorCollision(Vertex),
}

impl From<LinkageViolation> for Error {
    fn from(v: LinkageViolation) -> Self {
        Error::Verification(v.to_string())
    }
}

/// Paths `P_uv`, one per requested pair, in request order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Linkage {
    paths: Vec<((Vertex, Vertex), Vec<Vertex>)>,
}

impl Linkage {
    pub fn new() -> Self {
        Linkage::default()
    }

    pub fn push(&mut self, pair: (Vertex, Vertex), path: Vec<Vertex>) {
        self.paths.push((pair, path));
    }

    pub fn extend(&mut self, other: Linkage) {
        self.paths.extend(other.paths);
    }

    pub fn paths(&self) -> &[((Vertex, Vertex), Vec<Vertex>)] {
        &self.paths
    }

    pub fn into_paths(self) -> Vec<((Vertex, Vertex), Vec<Vertex>)> {
        self.paths
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&(Vertex, Vertex), &[Vertex])> {
        self.paths.iter().map(|(e, p)| (e, p.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// The path stored for `{u, v}`, oriented from `u`.
    pub fn path_for(&self, u: Vertex, v: Vertex) -> Option<Vec<Vertex>> {
        self.paths.iter().find_map(|((a, b), p)| {
            if (*a, *b) == (u, v) {
                Some(p.clone())
            } else if (*a, *b) == (v, u) {
                Some(p.iter().rev().copied().collect())
            } else {
                None
            }
        })
    }

    /// Number of paths containing `w`.
    pub fn congestion(&self, w: Vertex) -> usize {
        self.paths.iter().filter(|(_, p)| p.contains(&w)).count()
    }

    /// Congestion of every vertex on some path.
    pub fn loads(&self) -> HashMap<Vertex, usize> {
        let mut loads = HashMap::new();
        for (_, p) in &self.paths {
            let distinct: HashSet<_> = p.iter().copied().collect();
            for w in distinct {
                *loads.entry(w).or_insert(0) += 1;
            }
        }
        loads
    }

    pub fn max_congestion(&self) -> usize {
        self.loads().into_values().max().unwrap_or(0)
    }

    pub fn is_uncongested(&self) -> bool {
        self.max_congestion() <= 1
    }

    /// Checks that this is a `limit`-congested linkage for `pairs` in `host`:
    /// exactly one simple path per pair with the right endpoints.
    pub fn check(
        &self,
        host: &impl Adjacency,
        pairs: &[(Vertex, Vertex)],
        limit: usize,
    ) -> std::result::Result<(), LinkageViolation> {
        self.check_pairing(pairs)?;
        for (pair, path) in &self.paths {
            check_path(host, *pair, path)?;
        }
        if let Some((&vertex, &load)) = self.loads().iter().find(|(_, &l)| l > limit) {
            return Err(LinkageViolation::Congested {
                vertex,
                load,
                limit,
            });
        }
        Ok(())
    }

    /// Checks that the paths form a topological minor model of the guest edges
    /// `pairs` over the branch vertices: interiors avoid branch vertices and
    /// each other, while endpoints may be shared.
    pub fn check_topological_minor(
        &self,
        host: &impl Adjacency,
        pairs: &[(Vertex, Vertex)],
    ) -> std::result::Result<(), LinkageViolation> {
        self.check_pairing(pairs)?;
        let branch: HashSet<Vertex> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        let mut interior = HashSet::new();
        for (pair, path) in &self.paths {
            check_path(host, *pair, path)?;
            for &w in &path[1..path.len() - 1] {
                if branch.contains(&w) || !interior.insert(w) {
                    return Err(LinkageViolation::InteriorCollision(w));
                }
            }
        }
        Ok(())
    }

    fn check_pairing(&self, pairs: &[(Vertex, Vertex)]) -> std::result::Result<(), LinkageViolation> {
        let mut wanted: HashMap<(Vertex, Vertex), usize> = HashMap::new();
        for &(u, v) in pairs {
            *wanted.entry(ordered(u, v)).or_insert(0) += 1;
        }
        for (pair, _) in &self.paths {
            match wanted.get_mut(&ordered(pair.0, pair.1)) {
                Some(c) if *c > 0 => *c -= 1,
                _ => return Err(LinkageViolation::UnexpectedPath(*pair)),
            }
        }
        if let Some((&pair, _)) = wanted.iter().find(|(_, &c)| c > 0) {
            return Err(LinkageViolation::MissingPath(pair));
        }
        Ok(())
    }
}

fn check_path(
    host: &impl Adjacency,
    pair: (Vertex, Vertex),
    path: &[Vertex],
) -> std::result::Result<(), LinkageViolation> {
    let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
        return Err(LinkageViolation::WrongEndpoints(pair));
    };
    if ordered(first, last) != ordered(pair.0, pair.1) || path.len() < 2 {
        return Err(LinkageViolation::WrongEndpoints(pair));
    }
    let mut seen = HashSet::with_capacity(path.len());
    for &v in path {
        if v >= host.vertex_count() {
            return Err(LinkageViolation::NotAnEdge { pair, from: v, to: v });
        }
        if !seen.insert(v) {
            return Err(LinkageViolation::NotSimple { pair, vertex: v });
        }
    }
    for w in path.windows(2) {
        if !host.adjacent(w[0], w[1]) {
            return Err(LinkageViolation::NotAnEdge {
                pair,
                from: w[0],
                to: w[1],
            });
        }
    }
    Ok(())
}
