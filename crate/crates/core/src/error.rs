use thiserror::Error;

use crate::vector::IntVec;

/// Errors raised by the semigroup toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows have inconsistent lengths")]
    InconsistentRows,
    #[error("ambient dimension {dim} exceeds the supported maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("no nonzero generators")]
    NoGenerators,
    #[error("negative coordinate in generator {0}")]
    NegativeCoordinate(IntVec),
    #[error("{0} does not belong to the semigroup")]
    NotInSemigroup(IntVec),
    #[error("the Apery base must be nonzero")]
    ZeroBase,
    #[error("expected a group of rank 1, found rank {0}")]
    RankNotOne(usize),
    #[error("the semigroup is not simplicial")]
    NotSimplicial,
    #[error("generators are not linearly independent")]
    NotFree,
    #[error("Apery set is not certified complete")]
    IncompleteApery,
    #[error("Betti set is not certified complete")]
    IncompleteBetti,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid gluing certificate: {0}")]
    InvalidCertificate(String),
    #[error("gluing rejected: {0}")]
    GluingRejected(String),
    #[error("embedding dimension {size} exceeds the search limit of {limit}")]
    SearchLimit { size: usize, limit: usize },
    #[error("expected a univariate series")]
    NotUnivariate,
    #[error("numerator is not in factored form")]
    NotFactored,
    #[error("generators overlap or are not minimal after scaling")]
    OverlappingGenerators,
    #[error("generators must have gcd 1")]
    GcdNotOne,
    #[error("value out of the supported range: {0}")]
    OutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
