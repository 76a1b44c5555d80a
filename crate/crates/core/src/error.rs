use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Inputs violate a precondition (wrong dimension, value out of range, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An exact enumeration would exceed the configured cap.
    #[error("resource limit: {0}")]
    Resource(String),
    /// The quantity to normalize by is (numerically) zero.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }
}
