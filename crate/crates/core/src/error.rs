//! Error types shared across the library.

use thiserror::Error;

/// Library error type.
///
/// Domain errors are reported values rather than panics so that the
/// verifiers can classify a failed premise instead of aborting.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// The input lies outside the mathematical domain of an operation
    /// (e.g. the principal logarithm on the closed negative half-line).
    #[error("domain error in `{node}`: {message}")]
    Domain { node: String, message: String },

    /// Invalid argument to a library call (bad counts, non-orthogonal
    /// axes, wrong domain variant, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A constructor precondition was violated.
    #[error("construction error: {0}")]
    Construction(String),

    /// A function or domain description file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A sample request produced no points (e.g. empty sphere/domain
    /// intersection).
    #[error("empty sample set: {0}")]
    EmptySample(String),
}

impl Error {
    pub fn domain(node: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Domain {
            node: node.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
