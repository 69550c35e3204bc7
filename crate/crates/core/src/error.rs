use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the supported range.
    #[error("out of bounds: {0}")]
    Bounds(String),

    /// An argument violated a precondition of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The prime is ramified (divides the constraint's bad set) and carries
    /// no membership information; callers should skip it.
    #[error("prime {0} is excluded (ramified) for this input")]
    ExcludedPrime(u64),

    /// Malformed textual input (constraint line, polynomial, permutation).
    #[error("parse error: {0}")]
    Parse(String),

    /// The operation does not apply to the given inputs.
    #[error("not applicable: {0}")]
    Inapplicable(String),

    /// A sieve cache file was unreadable or did not match the request.
    #[error("sieve cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
