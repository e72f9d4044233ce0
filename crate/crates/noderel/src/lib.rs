//! Exact node-reliability polynomials for graphs.
//!
//! The node reliability of a graph is the probability that the operational
//! nodes (each up independently with probability p, over perfectly reliable
//! edges) induce a connected, nonempty subgraph. Unlike edge-failure
//! reliability, this curve need not be monotone in p, and this crate is
//! built around pinning that behavior down exactly:
//!
//! - [`rel_enumerate`] computes the polynomial by exhaustive subset
//!   enumeration; [`rel_algebra`] computes it by exact composition rules
//!   over a [`GraphExpr`] (clique substitution, isolated vertex, universal
//!   vertex); [`mc_estimate`] cross-checks both statistically.
//! - [`shape::analyze`] certifies the curve's shape on (0, 1): local
//!   extrema, maximal intervals of decrease, and inflection points, with
//!   Sturm-sequence root isolation in exact rational arithmetic.
//! - [`construct_k_intervals`] builds, for any k, a connected graph whose
//!   reliability curve has exactly k certified maximal intervals of
//!   decrease, and emits the expression, polynomial, and shape report as a
//!   verifiable certificate.
//!
//! Everything except Monte-Carlo estimates is exact: integer or rational
//! arithmetic throughout, no floating point.
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability, and the `noderel` binary for the command-line interface.

pub mod bitset;
pub mod cli;
pub mod construct;
pub mod error;
pub mod expr;
pub mod graph;
pub mod graph_io;
pub mod mc;
pub mod poly;
pub mod reliability;
pub mod shape;
pub mod sturm;

pub use construct::{
    construct_k_intervals, step_isolated, step_universal, ConstructConfig, ConstructionTrace,
    SearchPolicy, StepOutcome,
};
pub use error::{Error, Result};
pub use expr::{BaseGraph, GraphExpr, DEFAULT_REALIZE_CAP};
pub use graph::Graph;
pub use mc::{mc_estimate, McEstimate};
pub use poly::Polynomial;
pub use reliability::{
    rel_algebra, rel_enumerate, subgraph_counts, ReliabilityPolynomial, SubgraphCountVector,
    DEFAULT_ENUM_CAP,
};
pub use shape::{analyze, decrease_intervals, extrema, inflection_points, ShapeReport};
pub use sturm::{default_precision, isolate_roots, sturm_count, IsolatingInterval};
