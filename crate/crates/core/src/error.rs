use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("multinomial arity: entries sum to {got}, expected {expected}")]
    MultinomialArity { expected: u32, got: u32 },

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },

    #[error("variable count mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("not orthogonal: |g^T g - I|_inf = {deviation:e}")]
    NotOrthogonal { deviation: f64 },

    #[error("not a slice element: mixed quadratic terms {offending:?}")]
    NotInSlice { offending: Vec<String> },

    #[error("even degree required, got {degree}")]
    OddDegree { degree: u32 },

    #[error("unsupported shape n={n}, degree={degree}: {reason}")]
    UnsupportedShape { n: usize, degree: u32, reason: String },

    #[error("{what} index {value} out of range {min}..={max}")]
    OutOfRange { what: &'static str, value: usize, min: usize, max: usize },

    #[error("scalar mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("singular block {block}: {detail}")]
    SingularBlock { block: String, detail: String },

    #[error("group too large: n={n} exceeds limit {limit}")]
    GroupTooLarge { n: usize, limit: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),
}

impl Error {
    /// Errors raised by size or shape guards rather than malformed input.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::UnsupportedShape { .. } | Error::GroupTooLarge { .. })
    }
}
