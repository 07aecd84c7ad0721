//! Domination/packing instances: a graph with pre-dominating and
//! pre-dominated vertex sets and a domination mode.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `N[D ∪ X] ∪ Y = V`.
    #[default]
    Plain,
    /// Every vertex outside `X ∪ Y` with a neighbour needs a neighbour in `D`.
    Total,
    /// Every vertex outside `X ∪ Y` with a black neighbour needs a black
    /// neighbour in `D`.
    Black,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Mode::Plain),
            "total" => Ok(Mode::Total),
            "black" => Ok(Mode::Black),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Plain => "plain",
            Mode::Total => "total",
            Mode::Black => "black",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("{which} set is over a universe of {got} vertices, graph has {n}")]
    Universe { which: &'static str, got: usize, n: usize },
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("red edges are only allowed in black mode")]
    RedEdgesOutsideBlackMode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XYInstance {
    pub graph: Graph,
    pub x: VertexSet,
    pub y: VertexSet,
    pub mode: Mode,
}

impl XYInstance {
    pub fn new(graph: Graph, x: VertexSet, y: VertexSet, mode: Mode) -> Result<Self, InstanceError> {
        let n = graph.n();
        for (which, s) in [("x", &x), ("y", &y)] {
            if s.universe() != n {
                return Err(InstanceError::Universe { which, got: s.universe(), n });
            }
        }
        if mode != Mode::Black && !graph.is_plain() {
            return Err(InstanceError::RedEdgesOutsideBlackMode);
        }
        Ok(XYInstance { graph, x, y, mode })
    }

    /// Instance with empty `X` and `Y`.
    pub fn plain(graph: Graph) -> Self {
        Self::with_mode(graph, Mode::Plain)
    }

    pub fn with_mode(graph: Graph, mode: Mode) -> Self {
        let n = graph.n();
        XYInstance { graph, x: VertexSet::new(n), y: VertexSet::new(n), mode }
    }

    /// Builds from id lists, rejecting ids outside the graph.
    pub fn from_ids(graph: Graph, x: &[usize], y: &[usize], mode: Mode) -> Result<Self, InstanceError> {
        let n = graph.n();
        if let Some(&vertex) = x.iter().chain(y).find(|&&v| v >= n) {
            return Err(InstanceError::InvalidVertex { vertex, n });
        }
        Self::new(
            graph,
            VertexSet::from_iter(n, x.iter().copied()),
            VertexSet::from_iter(n, y.iter().copied()),
            mode,
        )
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}
