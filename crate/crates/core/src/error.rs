use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have positive degree")]
    ZeroDegree(String),
    #[error("elements live in different algebras")]
    AmbientMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("inhomogeneous element: {0}")]
    Inhomogeneous(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("presentation not closed at truncation {0}")]
    NotClosed(u32),
    #[error("degree {requested} lies above the computed range (top degree {top})")]
    BeyondTruncation { requested: u32, top: u32 },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("map to cohomology is not valid: {0}")]
    KMap(String),
    #[error("truncation {truncation} too small: need at least {needed}")]
    TruncationTooSmall { truncation: u32, needed: u32 },
    #[error("invalid problem: {0}")]
    Validation(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Process exit code used by the command front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
