use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("polynomial is constant in `{0}`")]
    ConstantInVariable(String),
    #[error("degree too small: need at least {needed}, got {got}")]
    DegreeTooSmall { needed: usize, got: usize },
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("invalid rational literal `{0}`")]
    ParseRational(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad prime {prime}: {reason}")]
    BadPrime { prime: u64, reason: String },
    #[error("ramified or degenerate specialization")]
    RamifiedSpecialization,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at the evaluation point")]
    Pole,
    #[error("base field mismatch")]
    FieldMismatch,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("curve is singular: {0}")]
    Singular(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid profile data: {0}")]
    InvalidProfile(String),
    #[error("elimination failed: {0}")]
    Elimination(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unexpected result: {0}")]
    Unexpected(String),
    #[error("malformed corpus: {0}")]
    Corpus(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
