use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NcError {
    #[error("number of variables must lie in 1..={max}, got {d}")]
    InvalidArity { d: usize, max: usize },

    #[error("letter {letter} out of range for d = {d}")]
    LetterOutOfRange { letter: usize, d: usize },

    #[error("dimension mismatch: expected {expected}, found {found} ({context})")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        context: &'static str,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("point outside the open unit ball (row norm {row_norm})")]
    OutsideBall { row_norm: f64 },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("dimension {dim} exceeds the guard {limit}")]
    GuardExceeded { dim: usize, limit: usize },

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("matrix does not preserve the signature form (residual {residual:e})")]
    NotSignaturePreserving { residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("truncation guard violated: tail bound {bound:e} exceeds tolerance {tol:e}")]
    TruncationGuard { bound: f64, tol: f64 },

    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, NcError>;

impl NcError {
    pub fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        NcError::Invalid {
            path: path.into(),
            message: message.into(),
        }
    }
}
