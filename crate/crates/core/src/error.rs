use thiserror::Error;

use crate::graph::{Vertex, VertexSet};

/// Errors reported by graph construction, parsing and the analysis entry points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("graphs with {n} vertices are not supported (limit is {limit})")]
    TooManyVertices { n: usize, limit: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("vertex {vertex} is not a leaf (degree {degree})")]
    NotALeaf { vertex: Vertex, degree: usize },

    #[error("the neighbour {vertex} of the glued leaf has degree {degree}, the circ operation needs at least 3")]
    DegreeTooSmall { vertex: Vertex, degree: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{set} is not a cut set")]
    NotCutSet { set: VertexSet },

    #[error("binomial edge ideal is not unmixed: c({set}) = {c}, expected {expected}")]
    NotUnmixed {
        set: VertexSet,
        c: usize,
        expected: usize,
    },

    #[error("the dual graph is disconnected")]
    DualDisconnected,

    #[error(
        "input has {n} vertices, above the size guard of {limit} (set BEID_GUARD_N to override)"
    )]
    SizeGuard { n: usize, limit: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Size guard with an optional override from the `BEID_GUARD_N` environment variable.
pub fn size_guard(default: usize) -> usize {
    std::env::var("BEID_GUARD_N")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

pub(crate) fn check_guard(n: usize, default: usize) -> Result<()> {
    let limit = size_guard(default);
    if n > limit {
        return Err(Error::SizeGuard { n, limit });
    }
    Ok(())
}
