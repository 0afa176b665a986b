use exact_linalg::LinalgError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear part is not unimodular")]
    NotUnimodular,
    #[error("holonomy not finite within bound {0}")]
    HolonomyNotFinite(usize),
    #[error("not a Bieberbach group: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Io(String),
    #[error("{path}: {source}")]
    InFile { path: String, source: Box<Error> },
    #[error("size guard exceeded: more than {0} elements")]
    SizeGuard(usize),
    #[error("element {0} is not in the group")]
    NotAMember(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
