//! Maximum packings of vertex-disjoint 3-vertex paths, with exact oracles
//! and constructive algorithms for claw-free graphs.

pub mod clawfree;
pub mod connectivity;
pub mod decomposition;
pub mod domination;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod linegraph;
pub mod matching;
pub mod oracle;
pub mod packing;
pub mod report;

pub use error::{Error, Result};
pub use graph::{Claw, Edge, Graph, VertexId};
pub use packing::{LambdaPacking, PackingConstraint, Path3};
