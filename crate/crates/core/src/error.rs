use alloc::string::String;
use alloc::vec::Vec;

use crate::VarSet;

/// Errors raised by the core library.
///
/// Variable and cluster references are 0-based indices.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[allow(missing_docs)]
pub enum Error {
    #[error("variable `{name}` has cardinality 0")]
    InvalidCardinality { name: String },
    #[error("variable name `{name}` is used twice")]
    DuplicateName { name: String },
    #[error("cell {cell:?} has {found} states but the scope has {expected} variables")]
    ArityMismatch {
        cell: Vec<u32>,
        expected: usize,
        found: usize,
    },
    #[error("cell {cell:?}: state {state} of variable {variable} is out of range (cardinality {cardinality})")]
    OutOfRangeState {
        cell: Vec<u32>,
        variable: usize,
        state: u32,
        cardinality: u32,
    },
    #[error("cell {cell:?} has non-positive probability {value}")]
    NonPositiveEntry { cell: Vec<u32>, value: f64 },
    #[error("cell {cell:?} appears more than once")]
    DuplicateAssignment { cell: Vec<u32> },
    #[error("probabilities sum to {sum}, not 1")]
    NotNormalized { sum: f64 },
    #[error("subset is empty")]
    EmptySubset,
    #[error("variable {index} is not in the scope")]
    IndexOutOfScope { index: usize },
    #[error("distributions or tree do not share the same scope")]
    ScopeMismatch,
    #[error("cell {cell:?} has positive probability in p but zero in q")]
    SupportViolation { cell: Vec<u32> },
    #[error("variable sets are not pairwise disjoint")]
    OverlappingSets,
    #[error("conditioned sets A and B must be nonempty")]
    EmptyABSet,
    #[error("cluster {cluster} is empty")]
    EmptyCluster { cluster: usize },
    #[error("cluster tree is not a tree: {reason}")]
    NotATree { reason: &'static str },
    #[error("cluster {inner} {inner_set} is contained in cluster {outer} {outer_set}")]
    ClusterSubsumed {
        inner: usize,
        inner_set: VarSet,
        outer: usize,
        outer_set: VarSet,
    },
    #[error("running intersection violated: clusters {a} and {b} share {shared} but cluster {via} on their path does not contain it")]
    RipViolation {
        a: usize,
        b: usize,
        shared: VarSet,
        via: usize,
    },
    #[error("junction tree product sums to {sum}; the tree does not fit the distribution")]
    NotNormalizedResult { sum: f64 },
    #[error("need at least 2 variables, got {n}")]
    ScopeTooSmall { n: usize },
    #[error("({i}, {j}) is not a pair of distinct variables in scope")]
    BadPair { i: usize, j: usize },
    #[error("numerical integrity: {what} = {value} is negative beyond slack")]
    NumericalIntegrity { what: &'static str, value: f64 },
    #[error("tolerance must be positive, got {tol}")]
    InvalidTolerance { tol: f64 },
    #[error("invalid generator config: {reason}")]
    ConfigInvalid { reason: &'static str },
    #[error("vertex {vertex} is not in the graph")]
    UnknownVertex { vertex: usize },
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: usize },
}

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
