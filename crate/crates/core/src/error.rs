use thiserror::Error;

use crate::instance::{Edge, RestrictionKind, Vertex};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{vertex} lists {listed} more than once")]
    DuplicateListing { vertex: Vertex, listed: Vertex },

    #[error("{vertex} lists {listed}, which is not a vertex of the opposite side")]
    UnknownVertex { vertex: Vertex, listed: Vertex },

    #[error("non-reciprocal listing: {from} lists {to} but {to} does not list {from}")]
    NonReciprocal { from: Vertex, to: Vertex },

    #[error("edge {0} appears more than once")]
    DuplicateEdge(Edge),

    #[error("rank of edge {0} must be positive")]
    ZeroRank(Edge),

    #[error("overlap: edge {edge} is both {first} and {second}")]
    Overlap {
        edge: Edge,
        first: RestrictionKind,
        second: RestrictionKind,
    },

    #[error("{kind} edge {edge} is not an edge of the instance")]
    RestrictedNotInGraph { edge: Edge, kind: RestrictionKind },

    #[error("forced edges share vertex {vertex}: {first} and {second}")]
    ForcedConflict {
        vertex: Vertex,
        first: Edge,
        second: Edge,
    },

    #[error("not a matching: {vertex} is covered by {first} and {second}")]
    MatchingConflict {
        vertex: Vertex,
        first: Edge,
        second: Edge,
    },

    #[error("edge {0} is not an edge of the instance")]
    NotAnEdge(Edge),

    #[error("edge {edge} is not incident to {vertex}")]
    NotIncident { vertex: Vertex, edge: Edge },

    #[error("edge {0} is in the matching; blocking is only defined for non-matching edges")]
    EdgeInMatching(Edge),

    #[error("dimension mismatch: expected {expected_men}+{expected_women} vertices, got {men}+{women}")]
    DimensionMismatch {
        expected_men: usize,
        expected_women: usize,
        men: usize,
        women: usize,
    },

    #[error("invalid master list: {0}")]
    MasterList(String),

    #[error("invalid formula: {0}")]
    Formula(String),

    #[error("invalid assignment: {0}")]
    Assignment(String),

    #[error("reduction precondition violated: {0}")]
    Precondition(String),

    #[error("witness mapping failed: {0}")]
    Witness(String),

    #[error("generator: {0}")]
    Generator(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
