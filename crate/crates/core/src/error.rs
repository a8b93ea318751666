use std::fmt;

/// Failure modes shared by the whole crate.
///
/// Every fallible operation reports through this type so callers can match on
/// the kind of failure without parsing message strings. The message carries
/// the specifics (offending value, cap that was hit, and so on).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument is outside the documented range for the operation.
    Range(String),
    /// A value fails a mathematical requirement (not prime, zero where nonzero
    /// is required, frequencies not strictly increasing, ...).
    Domain(String),
    /// The input lacks a structural property the operation needs, e.g. a
    /// coefficient vector that is not mirror-symmetric where symmetry is required.
    Structure(String),
    /// Input that is degenerate for the operation, e.g. the zero polynomial.
    DegenerateInput(String),
    /// A documented size or precision cap was exceeded.
    Capacity(String),
    /// A caller-stated precondition does not hold for the given data.
    Precondition(String),
    /// Malformed textual or serialized input.
    Format(String),
    /// The method cannot certify an answer either way for this input.
    Inconclusive(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Range(m) => write!(f, "range: {m}"),
            Error::Domain(m) => write!(f, "domain: {m}"),
            Error::Structure(m) => write!(f, "structure: {m}"),
            Error::DegenerateInput(m) => write!(f, "degenerate input: {m}"),
            Error::Capacity(m) => write!(f, "capacity: {m}"),
            Error::Precondition(m) => write!(f, "precondition: {m}"),
            Error::Format(m) => write!(f, "format: {m}"),
            Error::Inconclusive(m) => write!(f, "inconclusive: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
