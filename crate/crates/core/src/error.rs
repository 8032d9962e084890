use thiserror::Error;

/// Errors raised by the algebra, lattice, and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not skew-symmetric")]
    NotSkew,

    #[error("skew matrix has odd dimension {0}")]
    OddDimension(usize),

    #[error("matrix is singular")]
    Singular,

    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),

    #[error("malformed rational `{0}`")]
    MalformedRational(String),

    #[error("wrong shape: {0}")]
    Shape(String),

    #[error("half-dimension d must be at least 1")]
    ZeroDimension,

    #[error("vector has non-integral entry `{0}`")]
    NonIntegral(String),

    #[error("not applicable to a declared non-rational lattice: {0}")]
    NotApplicable(&'static str),

    #[error("malformed document: {0}")]
    Document(String),

    #[error("oracle refused: {0}")]
    OracleRefused(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code for this error: 3 for failed self-checks, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
