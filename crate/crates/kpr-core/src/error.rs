//! Error type shared across the simulator.

use std::fmt;

/// Errors raised by vector operations, the engine, and metrics.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A probability vector must hold at least one entry.
    InvalidSize { size: usize },
    /// Restaurant index outside `0..len`.
    IndexOutOfRange { index: usize, len: usize },
    /// A vector's entries no longer form a distribution (negative entry or
    /// sum away from 1 beyond tolerance).
    CorruptedDistribution { detail: String },
    /// A redistribution was asked to zero out every restaurant at once.
    DegenerateSupport,
    /// Rejected configuration; the message names the offending value.
    InvalidConfig(String),
    /// Series handed to an aggregation do not line up.
    SeriesMismatch { expected: usize, got: usize },
    /// Internal invariant violation; aborts the run.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSize { size } => {
                write!(f, "invalid vector size {size}: need at least one entry")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(
                    f,
                    "restaurant index {index} out of range for {len} restaurants"
                )
            }
            Error::CorruptedDistribution { detail } => {
                write!(f, "corrupted probability vector: {detail}")
            }
            Error::DegenerateSupport => {
                write!(
                    f,
                    "redistribution would remove every restaurant from the support"
                )
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::SeriesMismatch { expected, got } => {
                write!(f, "series length mismatch: expected {expected}, got {got}")
            }
            Error::Internal(msg) => write!(f, "internal invariant violation: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
