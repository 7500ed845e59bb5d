use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failure modes shared by every operation in the crate.
///
/// The three variants map onto distinct caller reactions: fix the input,
/// shrink the request, or treat the element as outside the operation's domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parameters that do not describe a valid object, e.g. `(a, b)` failing
    /// the closure condition.
    Validation(String),
    /// The request exceeds a configured resource cap or would overflow.
    Resource(String),
    /// The input is well formed but outside the operation's domain, e.g. the
    /// transfer map applied to a singular monoid.
    Domain(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn message(&self) -> &str {
        match self {
            Error::Validation(m) | Error::Resource(m) | Error::Domain(m) => m,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Validation(m) => write!(f, "validation error: {m}"),
            Error::Resource(m) => write!(f, "resource error: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
        }
    }
}

impl core::error::Error for Error {}
