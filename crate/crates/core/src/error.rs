//! Shared error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor {0} is not prime")]
    InvalidConductor(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("group closure exceeded bound {0}")]
    BoundExceeded(usize),
    #[error("desk-scale bound exceeded: {0}")]
    DeskBoundExceeded(String),
    #[error("matrix does not have multiplicative order dividing {0}")]
    OrderMismatch(u64),
    #[error("index [G:H] = {0} is not invertible in the coefficient ring")]
    IndexNotInvertible(u64),
    #[error("polynomial is not H-invariant")]
    NotHInvariant,
    #[error("coefficient ring has positive characteristic")]
    CharacteristicPositive,
    #[error("Dedekind criterion inapplicable: {0} divides the index")]
    IndexDivisible(u64),
    #[error("trace of the given vector is nonzero")]
    TraceNonzero,
    #[error("p = 2 is rejected for the 2x2 normal form")]
    EvenPrime,
    #[error("parameters are algebraically dependent")]
    DegenerateParameters,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
