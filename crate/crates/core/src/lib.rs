//! Hamilton cycles, cycle spaces over GF(2), and the machinery for deciding
//! whether the Hamilton cycles of a graph generate its whole cycle space.

pub mod classification;
pub mod constructions;
pub mod edgelist;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod hamgen;
pub mod hamilton;
pub mod structures;

pub use error::{Error, Result};
pub use graph::{Graph, Subgraph, VertexSet};
