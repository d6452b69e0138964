use thiserror::Error;

/// Errors raised by the fan, intersection and catalog kernels.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the operation's domain (bad degrees, bad cone, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The fan data itself is malformed (non-primitive ray, bad index, ...).
    #[error("structural error: {0}")]
    Structural(String),

    /// The fan is well-formed but the operation needs smooth/complete input.
    #[error("unsupported fan: {0}")]
    UnsupportedFan(String),

    /// An exact computation produced a value that contradicts an identity
    /// it is required to satisfy (e.g. a non-integral Euler characteristic).
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    /// A catalog recipe stores expected values only and cannot be evaluated.
    #[error("not constructible: {0}")]
    NotConstructible(String),

    /// Exact integer arithmetic left the supported range.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
