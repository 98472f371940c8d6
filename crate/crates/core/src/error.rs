use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("rotation system violates Euler's formula: V - E + F = {found}, expected {expected}")]
    EmbeddingInvalid { found: i64, expected: i64 },
    #[error("rotation system is inconsistent: {0}")]
    RotationMismatch(String),
    #[error("duplicate vertex id {0}")]
    DuplicateId(VertexId),
    #[error("vertex id {id} out of range for n = {n}")]
    VertexOutOfRange { id: VertexId, n: usize },
    #[error("vertex {0} has a negative or non-finite cost")]
    NegativeCost(VertexId),
    #[error("terminal {0} must have infinite cost")]
    TerminalFiniteCost(VertexId),
    #[error("edge {0} is a self-loop")]
    SelfLoop(usize),
    #[error("vertex {0} has infinite cost and positive length")]
    InfiniteVolume(VertexId),
    #[error("length assignment is invalid: {0}")]
    InvalidAssignment(String),
    #[error("vertex set does not induce a weakly connected subgraph")]
    NotConnected,
    #[error("graph is not weakly connected")]
    NotWeaklyConnected,
    #[error("cut contains infinite-cost vertex {0}")]
    CutContainsTerminal(VertexId),
    #[error("pair {pair} is joined by a path of infinite-cost vertices; no finite multicut exists")]
    Infeasible { pair: usize },
    #[error("constraint generation exceeded {limit} rows")]
    IterationLimit { limit: usize },
    #[error("vertex {vertex} has length {length} above the region-growing step {step}")]
    PreconditionLongVertex { vertex: VertexId, length: f64, step: f64 },
    #[error("no doubling radius exists around vertex {0}")]
    NoDoublingRadius(VertexId),
    #[error("path is not a shortest path: d({from}, {to}) = {distance} < {along}")]
    NotShortestPath { from: VertexId, to: VertexId, distance: f64, along: f64 },
    #[error("path length {length} exceeds delta {delta}")]
    PathTooLong { length: f64, delta: f64 },
    #[error("vertex sequence is not a directed path: {0}")]
    InvalidPath(String),
    #[error("root {root} does not reach vertex {vertex}")]
    NotRooted { root: VertexId, vertex: VertexId },
    #[error("no balanced separator found on {n} vertices")]
    NoBalancedCycle { n: usize },
    #[error("delta {0} must satisfy 0 < delta and 6 * delta < 1")]
    InvalidDelta(f64),
    #[error("rounded cut leaves pair {pair} connected")]
    FeasibilityCheckFailed { pair: usize },
    #[error("{count} finite-cost vertices exceed the exhaustive limit {limit}")]
    TooLarge { count: usize, limit: usize },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
