use thiserror::Error;

/// Errors raised by the algebra kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Mismatched lengths, rings, or malformed input.
    #[error("structural error: {0}")]
    Structural(String),
    /// The operation is not defined for this input (zero ideal, unit ideal, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An exponent does not fit in the fixed exponent width.
    #[error("exponent overflow: {0}")]
    Overflow(String),
    /// A configured work budget was exhausted.
    #[error("resource budget exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: u64 },
}

impl Error {
    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(what: impl Into<String>, limit: u64) -> Self {
        Error::Resource {
            what: what.into(),
            limit,
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
