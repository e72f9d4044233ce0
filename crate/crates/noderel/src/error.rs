//! Crate-wide error type.

use crate::construct::ConstructionTrace;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A graph was requested with zero vertices.
    #[error("graph order must be at least 1")]
    InvalidOrder,

    /// An edge (v, v) was supplied; the model is simple graphs.
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    /// An edge endpoint does not name a vertex of the graph.
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    /// A size cap (enumeration or realization) would be exceeded.
    #[error("{what} has order {size}, exceeding the cap of {cap}")]
    SizeLimit {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    /// Root counting and isolation are undefined for the zero polynomial.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    /// An argument is outside its mathematical domain.
    #[error("{0}")]
    Domain(String),

    /// The input is too degenerate for the requested analysis.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A value violated an invariant it is required to satisfy.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    /// A construction step was applied to an expression that does not
    /// satisfy its hypothesis.
    #[error("precondition not met: {0}")]
    Precondition(String),

    /// Malformed edge-list file.
    #[error("parse error at line {line}: {msg}")]
    ParseFile { line: usize, msg: String },

    /// Malformed expression string.
    #[error("expression parse error at column {column}: {msg}")]
    ParseDsl { column: usize, msg: String },

    /// The clique-size search hit its hard cap without certifying a step.
    /// The partial trace records every step completed before the failure.
    #[error("search exhausted: {op} step {step} tried l up to {max_l} without certification")]
    SearchExhausted {
        op: String,
        step: usize,
        max_l: u32,
        trace: Box<ConstructionTrace>,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
