//! Conflict-free vertex-connection of graphs.
//!
//! A vertex coloring makes a graph conflict-free vertex-connected when every
//! two vertices are joined by a path on which some color appears exactly
//! once. This crate computes the smallest such number of colors exactly,
//! builds the known explicit colorings, evaluates the known bounds and
//! checks all of it against independent brute-force oracles.
//!
//! ```
//! use vcfc::graph::generate::path;
//! use vcfc::solver::{vcfc_exact, SolveOptions};
//!
//! let r = vcfc_exact(&path(7), &SolveOptions::default()).unwrap();
//! assert_eq!(r.vcfc, 3);
//! assert!(r.certificate.verdict);
//! ```

pub mod bounds;
pub mod coloring;
pub mod constructions;
pub mod decomposition;
pub mod graph;
pub mod regress;
pub mod solver;

pub use bounds::{Bound, BoundTag, BoundsReport};
pub use coloring::{CfvcCertificate, VertexColoring};
pub use decomposition::BlockDecomposition;
pub use graph::{Graph, GraphError, GraphMetrics};
pub use solver::{SolveOptions, SolveResult};
