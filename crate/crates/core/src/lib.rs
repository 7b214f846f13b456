//! Treewidth upper bounds by iterative enrichment of a set of potential
//! maximal cliques.
//!
//! The solver keeps a set Π of potential maximal cliques as its current
//! solution. A dynamic program over Π produces the best tree decomposition
//! whose bags all come from Π; diversification and connection strategies
//! then grow Π so that the next run of the dynamic program finds a strictly
//! smaller width.

pub mod chordal;
pub mod dp;
pub mod graph;
pub mod improve;
pub mod pmc;
pub mod set;
pub mod td;
pub mod triangulate;
pub mod width;

pub use graph::Graph;
pub use set::VertexSet;
pub use td::{TdError, TreeDecomposition};
pub use width::Width;
