//! Crate error type.

use std::fmt;

/// Errors reported by construction and evaluation routines.
#[derive(Clone, PartialEq, Debug)]
pub enum Error {
    /// A coin parameter was outside the open interval (0, 1).
    InvalidTheta(f64),
    /// A Geo0 parameter was outside the open interval (0, 1).
    InvalidZeta(f64),
    /// A truncation budget was not a probability in (0, 1).
    InvalidTailEps(f64),
    /// A probability argument was outside its required range.
    InvalidProbability(f64),
    /// A state violated a structural invariant (e.g. multiplicity larger
    /// than the time index).
    InvalidState(String),
    /// Kernel evaluation requires the target time to be strictly later
    /// than the source time.
    TimeOrder { from: u32, to: u32 },
    /// The requested state is outside the domain of the transformed chain.
    OutsideDomain(String),
    /// Adaptive quadrature could not certify the requested tolerance.
    QuadratureTolerance { requested: f64, achieved: f64 },
    /// A truncated infinite sum could not be certified below tolerance.
    TailCertification(String),
    /// A distribution table failed its mass or ordering invariant.
    InvalidDistribution(String),
    /// A start count or approximation level exceeds the supported range.
    OutOfRange(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidTheta(v) => write!(f, "theta must lie in (0, 1), got {v}"),
            Error::InvalidZeta(v) => write!(f, "zeta must lie in (0, 1), got {v}"),
            Error::InvalidTailEps(v) => write!(f, "tail_eps must lie in (0, 1), got {v}"),
            Error::InvalidProbability(v) => write!(f, "probability argument out of range: {v}"),
            Error::InvalidState(s) => write!(f, "invalid state: {s}"),
            Error::TimeOrder { from, to } => {
                write!(f, "target time {to} must be strictly later than source time {from}")
            }
            Error::OutsideDomain(s) => write!(f, "state outside transformed chain domain: {s}"),
            Error::QuadratureTolerance { requested, achieved } => write!(
                f,
                "quadrature tolerance not met: requested {requested:e}, achieved {achieved:e}"
            ),
            Error::TailCertification(s) => write!(f, "tail bound not certified: {s}"),
            Error::InvalidDistribution(s) => write!(f, "invalid distribution table: {s}"),
            Error::OutOfRange(s) => write!(f, "out of supported range: {s}"),
        }
    }
}

impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
