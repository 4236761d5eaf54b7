use thiserror::Error;

use crate::exact_linalg::IntVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no primitive representative of the zero vector")]
    ZeroVector,

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("trivial monoid: every generator is zero")]
    TrivialMonoid,

    /// The monoid generated by the input is strictly smaller than `C ∩ L`.
    #[error("monoid is not normal: {witness} lies in C ∩ L but not in M; normalize the presentation first")]
    NotNormal { witness: IntVector },

    #[error("step budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("computation cancelled")]
    Cancelled,

    #[error("unit ideal")]
    UnitIdeal,

    #[error("input not prime: {0}")]
    NotPrime(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("divisorial ideals live over different monoids")]
    MonoidMismatch,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
