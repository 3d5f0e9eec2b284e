use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a sublattice: {0}")]
    NotASublattice(String),
    #[error("group order exceeds the limit of {0}")]
    OrderExceeded(usize),
    #[error("map is not invertible over the integers: {0}")]
    NotInvertible(String),
    #[error("element does not have finite order")]
    NotFiniteOrder,
    #[error("not a virtual character: {0}")]
    NotVirtualCharacter(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("character table rejected: {0}")]
    TableInvalid(String),
    #[error("polytope is not invariant: {0}")]
    NotInvariant(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not simplicial: {0}")]
    NotSimplicial(String),
    #[error("not a simplex: {0}")]
    NotSimplex(String),
    #[error("hypothesis violated at step {step} on face {face:?}: {reason}")]
    HypothesisViolated {
        step: usize,
        face: Vec<usize>,
        reason: String,
    },
    #[error("subdivision is not translative: vertex {vertex}, element {element}, facet {facet:?}")]
    NotTranslative {
        vertex: usize,
        element: usize,
        facet: Vec<usize>,
    },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("cone is not stabilized: {0}")]
    NotStabilized(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("not a lattice polytope: {0}")]
    NotLattice(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
