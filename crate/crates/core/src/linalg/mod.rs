//! Exact dense linear algebra over a single field `Q[sqrt(d)]`.

mod charpoly;
mod elim;
mod inertia;
mod matrix;
mod modular;
mod poly;

pub use elim::PivotStrategy;
pub use inertia::Inertia;
pub use matrix::{ExactMatrix, MatrixFile, RankCertificate};
pub use poly::{count_positive_real_roots, poly_expand_product, IntPolynomial};

use crate::field::FieldError;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("characteristic polynomial needs integer entries")]
    NonIntegerEntries,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("malformed matrix file: {0}")]
    Format(String),
}
