//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the library.
///
/// The CLI maps these onto process exit codes, so the variants distinguish
/// "your input text is malformed" from "your input is structurally invalid"
/// from "this computation is too large for the brute-force engine".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A vector or matrix dimension does not match what the operation needs.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Structurally invalid input (bad gadget vector, disconnected graph
    /// where a connected one is required, vector outside its domain, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Malformed input text (edge list or graph6).
    #[error("parse error: {0}")]
    Parse(String),

    /// The requested exhaustive enumeration exceeds the configured cap.
    #[error("capacity exceeded: n = {n} is over the brute-force cap {cap}")]
    Capacity { n: usize, cap: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
