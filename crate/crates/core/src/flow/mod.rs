//! Concurrent multicommodity flow and the linkage capacity bounds it implies.

mod certificate;
mod complete;
mod concurrent;
mod integral;
mod paths;
pub mod simplex;

pub use certificate::{flow_capacity_certificate, CheckScope, FlowCertificate, FlowRouter};
pub use complete::{complete_loads, route_in_complete};
pub use concurrent::{solve_concurrent_flow, solve_with_rule, FlowSolution, PathFlow, COLUMN_CAP, PATH_CAP};
pub use integral::{integralize, CongestedCliqueLinkage};
pub use paths::enumerate_paths;
