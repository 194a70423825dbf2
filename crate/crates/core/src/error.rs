use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("matrix is not skew-symmetrizable: {0}")]
    NotSkewSymmetrizable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("excluded surface: {0}")]
    ExcludedSurface(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("unknown arc {0}")]
    UnknownArc(String),
    #[error("marked point {0} is not a puncture")]
    NotAPuncture(u32),
    #[error("path does not connect the triangulations: {0}")]
    PathMismatch(String),
    #[error("enumeration did not close within {0} vertices")]
    FiniteTypeViolation(usize),
    #[error("incompatible scalar family: {0}")]
    IncompatibleFamily(String),
    #[error("inconsistent propagation: {0}")]
    Inconsistent(String),
    #[error("invalid coefficient policy: {0}")]
    InvalidPolicy(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("unknown example {0}")]
    UnknownExample(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
