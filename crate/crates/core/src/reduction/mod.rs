//! 3-Coloring to colorful subgraph counting through a blowup of the pattern,
//! with exact counts checked at every joint.

mod assignment;
mod colorful;
mod pipeline;
mod reroute;
mod split_list;

pub use assignment::{count_3assignments, count_3colorings, ThreeAssignmentInstance, MAX_COLORING_VERTICES};
pub use colorful::{count_colorful_sub, count_colorful_sub_in_order};
pub use reroute::{reroute, EmbeddedInstance, Layout};
pub use split_list::{split_list, CompatibilityGraph, MAX_BLOCK};
pub use pipeline::{full_pipeline, PipelineBudget, PipelineReport};
