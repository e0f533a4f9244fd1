use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkmError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial is not divisible by {0}")]
    NotDivisible(String),
    #[error("Palais-Smale condition fails on edge {from} -> {to}")]
    PalaisSmaleViolation { from: String, to: String },
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
    #[error("class is not in the span of the basis (stuck at vertex {0})")]
    NotInSpan(String),
    #[error("action undefined: edge {from} -> {to} has no image under {by}")]
    ActionUndefined { by: String, from: String, to: String },
    #[error("internal invariant failure: {0}")]
    Invariant(String),
    #[error("invalid character table: {0}")]
    InvalidTable(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
}

pub type Result<T, E = GkmError> = std::result::Result<T, E>;
