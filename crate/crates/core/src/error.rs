use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operation requires a finite field, got the rationals")]
    InfiniteField,
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("subspace is not an ideal")]
    NotIdeal,
    #[error("Leibniz rule fails on domain basis pair ({i}, {j})")]
    LeibnizViolation { i: usize, j: usize },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
