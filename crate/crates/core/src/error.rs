use std::fmt;

/// Error type shared across the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the inputs was violated.
    InvalidInput(String),
    /// The argument lies outside every supported evaluation regime.
    OutOfRegime(String),
    /// Evaluation at a pole (e.g. s2 at tau = i).
    Pole(String),
    /// The point is not in the requested region, or membership is
    /// boundary-indeterminate.
    Domain(String),
    /// Two internal routes to the same value disagreed beyond tolerance.
    ConsistencyFault(String),
    /// The series does not converge for these parameters.
    Divergence(String),
    /// Unknown identity id; carries the list of valid ids.
    UnknownId(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::OutOfRegime(m) => write!(f, "out of regime: {m}"),
            Error::Pole(m) => write!(f, "pole: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::ConsistencyFault(m) => write!(f, "consistency fault: {m}"),
            Error::Divergence(m) => write!(f, "divergent series: {m}"),
            Error::UnknownId(m) => write!(f, "unknown id: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
