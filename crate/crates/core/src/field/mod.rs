//! Exact scalars: arbitrary-precision rationals and elements of real quadratic
//! fields `Q[sqrt(d)]`.

mod parse;
pub(crate) mod quad;
mod squarefree;

pub use num_rational::BigRational as Rational;
pub use parse::parse_scalar;
pub use quad::QuadScalar;
pub use squarefree::{is_squarefree, squarefree_decompose};

/// Errors raised by scalar arithmetic and parsing.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: Q[sqrt({left})] vs Q[sqrt({right})]")]
    FieldMismatch { left: u32, right: u32 },
    #[error("field tag {0} is not a squarefree integer >= 1")]
    InvalidTag(u64),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("expression mixes sqrt({first}) and sqrt({second})")]
    MixedRadicals { first: u32, second: u32 },
}
