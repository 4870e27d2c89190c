use alloc::string::String;
use core::fmt;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input violates an operation's precondition.
    Domain(String),
    /// A configured size limit was exceeded.
    Capacity { what: &'static str, cap: usize },
    /// Fixed-width integer arithmetic overflowed.
    Overflow,
    /// An internal consistency check failed; indicates a bug or an invalid input
    /// that slipped past validation.
    Internal(String),
    /// Malformed structured input (diagram codes and the like).
    Parse(String),
    /// An Alexander polynomial is not of the form required of L-space knots.
    NotLSpaceForm { index: i64, reason: &'static str },
    /// A link diagram has nugatory crossings.
    ReduceFirst(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Capacity { what, cap } => write!(f, "capacity exceeded: {what} (cap {cap})"),
            Error::Overflow => f.write_str("integer overflow"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::NotLSpaceForm { index, reason } => {
                write!(
                    f,
                    "not an L-space knot polynomial at index {index}: {reason}"
                )
            }
            Error::ReduceFirst(msg) => write!(f, "diagram is not reduced: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
