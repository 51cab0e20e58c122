use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A point or state outside the region where the formulas are defined
    /// (beyond the horizon, on the axis, superluminal, imaginary static branch).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed arguments: grid sizes, CFL numbers, time lists.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The explicit scheme produced a non-finite or runaway value.
    #[error("instability at step {step} (t = {t}): cell {cell} has v = {value}")]
    Instability {
        step: usize,
        t: f64,
        cell: usize,
        value: f64,
    },
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}
