use thiserror::Error;

/// Errors raised by the arithmetic kernels and the special-value constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in F_{q}")]
    ZeroDivision { q: u32 },

    #[error("series is zero to its precision O(w^{prec}) and cannot be inverted")]
    NotInvertible { prec: i64 },

    #[error("an exact series has no finite inverse; truncate it first")]
    InfinitePrecision,

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("cannot certify convergence: {0}")]
    CannotCertify(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("search bounds exhausted: {0}")]
    SearchExhausted(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
