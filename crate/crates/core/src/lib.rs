//! Sublinear MST and TSP cost estimation.
//!
//! The crate simulates two resource-bounded access models over an integer
//! metric, metric or graph streams with pass and storage metering, and a
//! distance-query oracle with distinct-pair accounting, and implements
//! estimators in both. Exact brute-force references live in [`exact`].

pub mod cover;
pub mod error;
pub mod estimate;
pub mod exact;
pub mod gen;
pub mod metric;
pub mod oracle;
pub mod query_g1;
pub mod query_mst;
pub mod rng;
pub mod stream;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use metric::{Metric, WeightedGraph};
pub use oracle::CountingOracle;
pub use tree::RootedTree;
