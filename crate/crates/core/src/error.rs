use std::fmt;

/// Errors surfaced by the library. Everything here is a hard, exact failure:
/// there are no tolerance or rounding error paths anywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by an exact zero.
    DivisionByZero,
    /// Group closure exceeded the element limit (group too large or infinite).
    LimitExceeded { limit: usize },
    /// A matrix that must be invertible is singular.
    SingularMatrix,
    /// Mismatched dimensions or orders between operands.
    Mismatch(String),
    /// Text input could not be parsed. `pos` is a byte offset into the
    /// offending string when available.
    Parse { msg: String, pos: Option<usize> },
    /// Unknown catalog or command name.
    UnknownName(String),
    /// A constructed object failed its validation checks.
    Validation(String),
    /// Operation not applicable (wrong dimension, out-of-range argument).
    Unsupported(String),
    /// An internal consistency check failed. Seeing this means a bug:
    /// exact arithmetic produced something impossible.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::LimitExceeded { limit } => {
                write!(
                    f,
                    "group too large or infinite (closure limit {limit} exceeded)"
                )
            }
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::Mismatch(m) => write!(f, "mismatch: {m}"),
            Error::Parse { msg, pos } => match pos {
                Some(p) => write!(f, "parse error at byte {p}: {msg}"),
                None => write!(f, "parse error: {msg}"),
            },
            Error::UnknownName(n) => write!(f, "unknown name: {n}"),
            Error::Validation(m) => write!(f, "validation failed: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Internal(m) => write!(f, "internal consistency error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
