use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty factor list")]
    EmptyFactors,
    #[error("factor sizes must be positive, got {0}")]
    NonPositiveDim(usize),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("weights must sum to 1 (sum = {0})")]
    WeightSum(f64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("wrong coefficient length: expected {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("not a projection: idempotence residual {idempotence:.3e}, self-adjointness residual {adjoint:.3e}")]
    InvalidProjection { idempotence: f64, adjoint: f64 },
    #[error("rank {rank} out of range for factor of size {size}")]
    RankOutOfRange { rank: usize, size: usize },
    #[error("invalid tolerance policy: {0}")]
    Tolerance(String),
    #[error("ambient algebras differ")]
    AmbientMismatch,
    #[error("subspace is not invariant under the involution (max leakage angle {0:.3e})")]
    NotInvariant(f64),
    #[error("not a weight vector")]
    NotWeightVector,
    #[error("weight must be weakly decreasing: {0:?}")]
    NonMonotoneWeight(Vec<i64>),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("element is not supported in the given factor subset")]
    SupportViolation,
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
