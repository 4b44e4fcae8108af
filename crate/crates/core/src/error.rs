use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("invalid composition: inner series has nonzero constant term")]
    NonzeroConstantTerm,

    #[error("insufficient valuation window: exponent {exponent} lies outside {low}..={high}")]
    InsufficientValuation { exponent: i64, low: i64, high: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("functional equation inconsistent at degree {degree}: {detail}")]
    Inconsistent { degree: usize, detail: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not log-terminal: discrepancy {0} <= -1")]
    NotLogTerminal(String),

    #[error("missing tangent data: {0}")]
    MissingTangentData(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}
