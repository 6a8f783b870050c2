use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable p_{{{row},{col}}} is outside the {rows}x{cols} matrix")]
    VariableOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("unsupported parameter regime: {0}")]
    Regime(String),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("leading monomial {0} is not squarefree")]
    NotSquarefree(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
