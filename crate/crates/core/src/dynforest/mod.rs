//! Dynamic forest engines: Euler tour forest, link-cut forest and HDT.

mod ett;
mod hdt;
mod lct;

pub use ett::{check_tour, EulerTourForest};
pub use hdt::HdtConnectivity;
pub use lct::LinkCutForest;

use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("vertices {0} and {1} are already in the same tree")]
    SameTree(Vertex, Vertex),
    #[error("({0}, {1}) is not a tree edge")]
    NotATreeEdge(Vertex, Vertex),
    #[error("edge ({0}, {1}) already present")]
    AlreadyPresent(Vertex, Vertex),
    #[error("edge ({0}, {1}) not present")]
    NotPresent(Vertex, Vertex),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
}

/// How the spanning forest changed under one graph update.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForestChange {
    NoChange,
    TreeEdgeAdded(Vertex, Vertex),
    TreeEdgeRemoved {
        u: Vertex,
        v: Vertex,
        replacement: Option<(Vertex, Vertex)>,
    },
}
