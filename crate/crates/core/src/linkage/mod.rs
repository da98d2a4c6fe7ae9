//! Matching-linked sets in blowups: search, certification, the analytic grid
//! and Beneš witnesses, and the capacity bounds they imply.

mod appendix;
mod capacity;
pub mod certify;
mod grid;
mod maximum;
mod search;

pub use appendix::{appendix_linkage, appendix_linkage_oracle};
pub use capacity::{
    avg_degree_bound, capacity_from_witness, cybt_pattern, grid_capacity_bound, CapacityBound,
    CybtPattern, Provenance,
};
pub use certify::{all_matchings, certify_with, is_matching_linked, maximal_matchings, Certification};
pub use grid::{even_diagonal, grid_blowup2_linkage, grid_diagonal_linkage};
pub use maximum::max_matching_linked_set;
pub use search::{find_linkage_backtracking, SearchOutcome};

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::benes::{augmented_link, BenesNetwork};
use crate::error::{Error, Result};
use crate::flow::FlowRouter;
use crate::graph::{grid_vertex, Blowup, BlowupVertex, Graph, Linkage, Matching, Vertex};

/// How linkages for a witness are produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Router {
    AppendixEnumeration,
    Backtracking,
    BenesAnalytic,
    GridAnalytic,
    FlowDerived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessStatus {
    /// Guaranteed by a theorem and a deterministic router.
    Analytic,
    /// Every maximal matching (up to clone symmetry) was routed and checked.
    Certified { maximum: bool, matchings_checked: usize },
    Uncertified,
}

/// A set `X` in `H ⊗ J_q` claimed to be matching-linked.
#[derive(Clone, Debug)]
pub struct LinkedSetWitness {
    pub base: Graph,
    pub q: usize,
    pub set: Vec<BlowupVertex>,
    pub router: Router,
    pub status: WitnessStatus,
    host: OnceLock<Graph>,
    flow: Option<Arc<FlowRouter>>,
}

impl LinkedSetWitness {
    pub fn new(base: Graph, q: usize, set: Vec<BlowupVertex>, router: Router, status: WitnessStatus) -> Self {
        LinkedSetWitness {
            base,
            q,
            set,
            router,
            status,
            host: OnceLock::new(),
            flow: None,
        }
    }

    /// Attaches the flow construction used by [`Router::FlowDerived`].
    pub fn with_flow(mut self, router: Arc<FlowRouter>) -> Self {
        self.flow = Some(router);
        self
    }

    /// The inputs of `B̌_level`, with `q = 1`.
    pub fn benes(level: u32) -> Result<Self> {
        let network = BenesNetwork::augmented(level)?;
        let set = network.inputs.iter().map(|&base| BlowupVertex { base, clone: 0 }).collect();
        Ok(LinkedSetWitness::new(network.graph, 1, set, Router::BenesAnalytic, WitnessStatus::Analytic))
    }

    /// The first `ℓ′` diagonal cells of `⊞_side`, clone 0, in `⊞_side ⊗ J_2`.
    pub fn grid(side: usize) -> Result<Self> {
        if side < 2 {
            return Err(Error::invalid("grid witness needs side ≥ 2"));
        }
        let set = (0..even_diagonal(side))
            .map(|i| BlowupVertex { base: grid_vertex(side, i, i), clone: 0 })
            .collect();
        Ok(LinkedSetWitness::new(Graph::grid(side), 2, set, Router::GridAnalytic, WitnessStatus::Analytic))
    }

    pub fn blowup(&self) -> Blowup<'_> {
        Blowup::new(&self.base, self.q).expect("q ≥ 1")
    }

    /// Blowup ids of the set.
    pub fn set_ids(&self) -> Vec<Vertex> {
        let b = self.blowup();
        self.set.iter().map(|&v| b.id(v)).collect()
    }

    pub fn is_trusted(&self) -> bool {
        !matches!(self.status, WitnessStatus::Uncertified)
    }

    pub fn is_maximum(&self) -> bool {
        matches!(self.status, WitnessStatus::Certified { maximum: true, .. })
    }

    /// Routes a matching on the set with the witness's router, without
    /// verifying the result.
    pub fn try_route(&self, m: &Matching, budget: u64) -> Result<SearchOutcome> {
        let b = self.blowup();
        match self.router {
            Router::BenesAnalytic => {
                let level = self.set.len().trailing_zeros();
                augmented_link(level, m).map(SearchOutcome::Found)
            }
            Router::GridAnalytic => {
                let side = (self.base.n() as f64).sqrt().round() as usize;
                let mut base_edges = Vec::with_capacity(m.len());
                for &(x, y) in m.edges() {
                    let (u, v) = (b.vertex(x), b.vertex(y));
                    if u.clone != 0 || v.clone != 0 {
                        return Err(Error::invalid("grid router expects clone-0 endpoints"));
                    }
                    base_edges.push((u.base, v.base));
                }
                grid_blowup2_linkage(side, &Matching::new(base_edges)?).map(SearchOutcome::Found)
            }
            Router::AppendixEnumeration => Ok(match appendix_linkage(&self.base, self.q, m)? {
                Some(l) => SearchOutcome::Found(l),
                None => SearchOutcome::NotFound,
            }),
            Router::FlowDerived if self.flow.is_some() => {
                let flow = self.flow.as_ref().expect("checked");
                flow.route(&self.base, m).map(SearchOutcome::Found)
            }
            Router::Backtracking | Router::FlowDerived => {
                find_linkage_backtracking(self.host(), m, budget)
            }
        }
    }

    /// Routes and verifies an uncongested linkage for a matching on the set.
    pub fn route(&self, m: &Matching, budget: u64) -> Result<Linkage> {
        if !m.is_on(&self.set_ids()) {
            return Err(Error::invalid("matching is not on the witness set"));
        }
        match self.try_route(m, budget)? {
            SearchOutcome::Found(l) => {
                l.check(&self.blowup(), m.edges(), 1)?;
                Ok(l)
            }
            SearchOutcome::NotFound => Err(Error::verification(format!(
                "witness set does not link {:?}",
                m.edges()
            ))),
            SearchOutcome::BudgetExceeded => Err(Error::BudgetExceeded(budget)),
        }
    }

    fn host(&self) -> &Graph {
        self.host.get_or_init(|| self.blowup().graph())
    }

    /// Routes every maximal matching on the set, one per clone orbit, checks
    /// each linkage, and records the verdict in `status`.
    pub fn certify(&mut self, budget: u64) -> Result<Certification> {
        let ids = self.set_ids();
        let classes: Vec<usize> = self.set.iter().map(|v| v.base).collect();
        let host = self.blowup();
        let this = &*self;
        let cert = certify_with(&ids, Some(&classes), |m| {
            let out = this.try_route(m, budget)?;
            if let SearchOutcome::Found(l) = &out {
                l.check(&host, m.edges(), 1)?;
            }
            Ok(out)
        })?;
        if let Certification::Certified { matchings_checked } = cert {
            if self.status != WitnessStatus::Analytic {
                self.status = WitnessStatus::Certified {
                    maximum: self.is_maximum(),
                    matchings_checked,
                };
            }
        } else if self.status != WitnessStatus::Analytic {
            self.status = WitnessStatus::Uncertified;
        }
        Ok(cert)
    }
}
