//! Domination and packing numbers of graphs: exact oracles, certified
//! constant-ratio constructions, extremal families and their I/O.

pub mod constructions;
pub mod engine;
pub mod families;
pub mod graph;
pub mod instance;
pub mod io;
pub mod oracles;
pub mod ratio;

pub use graph::{EdgeColor, Graph, GraphBuilder, GraphError, VertexSet};
pub use instance::{Mode, XYInstance};
pub use ratio::Rational;
