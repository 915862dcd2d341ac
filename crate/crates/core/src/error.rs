use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller supplied malformed or out-of-range data.
    Usage(String),
    /// Two vectors or tables disagree on the ground set size.
    WidthMismatch { expected: usize, found: usize },
    /// The operation would produce an empty point set.
    EmptyResult(&'static str),
    /// A witness constructor was asked for a witness that does not exist.
    NoWitness(&'static str),
    /// Input failed its certification check.
    NotCertified(&'static str),
    /// An exhaustive search exceeds its configured size cap.
    CapExceeded { what: &'static str, size: usize, cap: usize },
    /// Exact integer arithmetic left the supported range.
    Overflow,
    /// Two independent code paths produced different answers.
    Disagreement(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::WidthMismatch { expected, found } => {
                write!(f, "width mismatch: expected {expected}, found {found}")
            }
            Error::EmptyResult(what) => write!(f, "empty result: {what}"),
            Error::NoWitness(what) => write!(f, "no witness: {what}"),
            Error::NotCertified(what) => write!(f, "not certified: {what}"),
            Error::CapExceeded { what, size, cap } => {
                write!(f, "{what}: size {size} exceeds cap {cap}")
            }
            Error::Overflow => f.write_str("integer overflow"),
            Error::Disagreement(what) => write!(f, "internal disagreement: {what}"),
        }
    }
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Usage(_) => "usage",
            Error::WidthMismatch { .. } => "width_mismatch",
            Error::EmptyResult(_) => "empty_result",
            Error::NoWitness(_) => "no_witness",
            Error::NotCertified(_) => "not_certified",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Overflow => "overflow",
            Error::Disagreement(_) => "disagreement",
        }
    }
}
