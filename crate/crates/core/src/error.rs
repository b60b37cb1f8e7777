use thiserror::Error;

use crate::graph::{Edge, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex not in graph: {0}")]
    UnknownVertex(VertexId),

    #[error("edge not in graph: {0}")]
    UnknownEdge(Edge),

    #[error("loop at vertex {0}")]
    Loop(VertexId),

    #[error("graph not connected")]
    NotConnected,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("oracle cap exceeded: {order} vertices > cap {cap}")]
    OracleCap { order: usize, cap: usize },

    #[error("not a chain: {0} end-blocks")]
    NotAChain(usize),

    /// A step that the underlying theorem guarantees did not go through on a
    /// valid input. Either the implementation is wrong or the input is a
    /// counterexample; callers re-check with the oracle before deciding.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid recipe: {0}")]
    Recipe(String),

    #[error("unknown theorem id {id:?}; valid ids: {valid}")]
    UnknownTheorem { id: String, valid: String },
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
