use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable signatures differ: {0}")]
    VariableMismatch(String),
    #[error("operation not defined on Laurent variable {0:?}")]
    UnsupportedVariable(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("generator {0} does not act on this module")]
    InvalidGenerator(String),
    #[error("module is not a weight module on this truncation: {0}")]
    NotWeight(String),
    #[error("zero vector has no certificate")]
    ZeroVector,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("action data does not define a module: relation {relation} fails ({detail})")]
    NotAModule { relation: String, detail: String },
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("isomorphism test requires simple modules: {0}")]
    RequiresSimple(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("certificate replay failed at step {step}: {detail}")]
    Replay { step: usize, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
