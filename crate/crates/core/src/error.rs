use thiserror::Error;

/// Errors raised by the extended-quotient computations.
///
/// `Integrality` and `Consistency` never fire on correct code: they signal
/// that an identity which must hold exactly has failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: u64,
        got: u64,
    },

    #[error("{what} = {got} is out of range (expected < {bound})")]
    OutOfRange {
        what: &'static str,
        got: u64,
        bound: u64,
    },

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: u64, got: u64 },

    #[error("a point needs at least one coordinate")]
    EmptyPoint,

    #[error("omega = {omega} is not a {d}-th root of unity")]
    InvalidOmega { omega: String, d: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid residue field: q = {q} is not a positive power of p = {p}")]
    InvalidField { p: u64, q: u64 },

    #[error("shift by {k} does not fix the point {point}")]
    NotFixed { k: u64, point: String },

    #[error("oracle bound exceeded: n = {n} > bound {bound}")]
    OracleBoundExceeded { n: u64, bound: u64 },

    #[error("non-integral character average in degree {degree} for n = {n}")]
    Integrality { n: u64, degree: usize },

    #[error("consistency check failed for n = {n}: {detail}")]
    Consistency { n: u64, detail: String },

    #[error("malformed fraction at position {position}: {reason}")]
    Parse { position: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(what: &'static str, got: u64) -> Result<()> {
    if got == 0 {
        Err(Error::TooSmall { what, min: 1, got })
    } else {
        Ok(())
    }
}
