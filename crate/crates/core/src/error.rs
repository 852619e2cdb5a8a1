use crate::linprog::LpStatus;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("empty input")]
    EmptyInput,

    #[error("more than two classes: {0:?}")]
    TooManyClasses(Vec<String>),

    #[error("single-class dataset")]
    SingleClass,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid dataset: {0}")]
    InvalidData(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("class {label} has {count} samples, need at least {needed}")]
    TooFewSamples {
        label: i8,
        count: usize,
        needed: usize,
    },

    #[error("hyperplane is not separating (minimum margin {0})")]
    NotSeparating(f64),

    #[error("linear program ended with status {status:?} after {iterations} iterations")]
    Lp { status: LpStatus, iterations: usize },

    #[error("SMO did not converge after {passes} passes (max KKT violation {max_violation:.3e})")]
    SvmNotConverged { passes: usize, max_violation: f64 },

    #[error("malformed model document: {0}")]
    Model(String),
}
