use thiserror::Error;

/// Errors raised by the library. Every fallible operation returns one of these.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Operands that do not live in the same structure (ring, module, carrier).
    #[error("structural mismatch: {0}")]
    Structural(String),
    /// A size cap was exceeded before any work was done.
    #[error("resource limit: {what} is {size}, cap is {cap}")]
    Resource {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    /// The input does not satisfy a mathematical precondition of the operation.
    #[error("precondition not met: {0}")]
    Precondition(String),
    /// A floating point procedure did not reach the required accuracy.
    #[error("numerical failure: {0}")]
    Numeric(String),
    /// Malformed descriptor, character or file content.
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(what: &'static str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::Resource { what, size, cap })
    } else {
        Ok(())
    }
}
