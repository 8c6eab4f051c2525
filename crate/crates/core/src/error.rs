use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument violates a precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A coefficient was requested outside the certified range of an expansion.
    #[error("truncation: |D| = {requested} exceeds certified bound {bound}")]
    Truncation { requested: u64, bound: u64 },

    #[error("consistency violation: {0}")]
    Consistency(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    /// The exceptional prime set `A(p, lambda_p)` is infinite.
    #[error("exceptional set is infinite: lambda_p = {0}")]
    InfiniteSet(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn truncation(requested: u64, bound: u64) -> Self {
        Error::Truncation { requested, bound }
    }
}
