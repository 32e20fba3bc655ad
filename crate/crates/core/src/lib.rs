//! Exact certification of quasi-randomness for equal-part restricted
//! subgraph-count properties, plus the counting and sampling tools used to
//! check the count formulas on concrete graphs.

pub mod certify;
pub mod count;
pub mod empirical;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod lambda;
pub mod poly;
pub mod report;
pub mod survey;

pub use error::{Error, Result};
