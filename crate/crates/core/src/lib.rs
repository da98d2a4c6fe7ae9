pub mod benes;
pub mod cli;
pub mod error;
pub mod flow;
pub mod format;
pub mod graph;
pub mod indsub;
pub mod linkage;
pub mod random;
pub mod ratio;
pub mod reduction;
pub mod selftest;

pub use error::{Error, Result};
