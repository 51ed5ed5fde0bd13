use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("matrix is not unimodular: determinant {det}")]
    NotUnimodular { det: String },

    #[error("automorphism is not ergodic: {0}")]
    NonErgodic(String),

    #[error("precision too low: {0}; retry with more digits")]
    PrecisionAmbiguity(String),

    #[error("root refinement did not converge for polynomial {poly}")]
    NoConvergence { poly: String },

    #[error("{0} unit-modulus pairs exceed the enumeration limit of {1}")]
    TooManyPairs(usize, usize),

    #[error("invalid window {lo}:{hi}: {reason}")]
    InvalidWindow { lo: usize, hi: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal arithmetic error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
