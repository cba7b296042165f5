//! Matching-covered bipartite graphs: perfect matchings, tight and separating
//! cuts, braces, thin edges, planarity, and exhaustive census checks of the
//! structural theorems about planar braces.

pub mod brace;
pub mod cuts;
pub mod error;
pub mod generate;
pub mod graph;
pub mod matching;
pub mod planarity;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Graph, MultiGraph, Shore, VertexSet};
