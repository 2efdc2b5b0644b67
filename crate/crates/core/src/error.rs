//! Error type shared by all core modules.

use core::fmt;

/// Errors reported by sieve, census and constants routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A range or count was empty where at least one element is required
    /// (e.g. `primes_up_to(1)`, `first_n_primes(0)`).
    EmptyRange { what: &'static str },
    /// A request exceeded a configured or physical capacity limit.
    Capacity {
        what: &'static str,
        requested: u64,
        limit: u64,
    },
    /// An argument was outside the mathematical domain of the operation.
    Domain { what: &'static str, value: u64 },
    /// A constraint prime violates the hypotheses it has to satisfy.
    Constraint { prime: u64, reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyRange { what } => write!(f, "empty range: {what}"),
            Error::Capacity {
                what,
                requested,
                limit,
            } => write!(f, "capacity exceeded: {what} ({requested} > {limit})"),
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value})"),
            Error::Constraint { prime, reason } => {
                write!(f, "constraint violation at prime {prime}: {reason}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
