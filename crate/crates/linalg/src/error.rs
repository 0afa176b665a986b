use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("entry count {found} does not match {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, found: usize },
    #[error("columns are not linearly independent")]
    NotIndependent,
    #[error("columns do not span a pure sublattice (invariant factor {0})")]
    NotPure(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
}
