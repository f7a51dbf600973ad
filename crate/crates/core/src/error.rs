use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EacpError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("mixed scalar backends: {0}")]
    MixedBackends(String),
    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("algebra is not in canonical form: {0}")]
    NotCanonical(String),
    #[error("not a natural basis: {0}")]
    NotNaturalBasis(String),
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("subspace is not closed under multiplication: {0}")]
    NotClosed(String),
    #[error("theorem inapplicable: {0}")]
    TheoremInapplicable(String),
    #[error("closed-form expansion refused beyond m = {cap} (asked for m = {requested})")]
    ExpansionCap { cap: u32, requested: u32 },
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

pub type Result<T> = std::result::Result<T, EacpError>;
