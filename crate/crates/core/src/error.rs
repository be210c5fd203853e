use thiserror::Error;

/// Errors raised by the engine library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{name} = {value} is outside the allowed range [0, {max}]")]
    OutOfRange { name: &'static str, value: f64, max: f64 },

    #[error("singular cycle: the cyclic fixed-point equation is degenerate")]
    SingularCycle,

    /// The working body is not in the β-order that allows heat intake from the hot bath.
    #[error("order violation: p = {p} is not admissible for beta_h*omega = {beta_h_omega}")]
    OrderViolation { p: f64, beta_h_omega: f64 },

    #[error("efficiency is undefined (zero heat intake)")]
    UndefinedEfficiency,

    #[error("unsupported restriction: {0}")]
    UnsupportedRestriction(String),

    #[error("resource limit: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;

pub(crate) fn invalid(msg: impl Into<String>) -> EngineError {
    EngineError::InvalidInput(msg.into())
}
