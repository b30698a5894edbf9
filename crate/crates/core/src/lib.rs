//! Exact certificates for lower bounds on the Colin de Verdiere parameter.
//!
//! Arithmetic happens in `Q` or a real quadratic field `Q[sqrt d]`
//! ([`QuadScalar`]); signs, ranks and inertias are decided exactly. On top
//! of that sit Todd-Coxeter coset enumeration ([`groups`]), maps built from
//! cosets ([`maps`]), and discrete Schrodinger operators with the Strong
//! Arnold Property check ([`cdv`]).

pub mod cdv;
pub mod field;
pub mod groups;
pub mod linalg;
pub mod maps;

pub use cdv::{CdvError, SchrodingerOperator};
pub use field::{parse_scalar, FieldError, QuadScalar, Rational};
pub use groups::{CosetTable, FiniteGroup, GroupError, Presentation, Word};
pub use linalg::{ExactMatrix, Inertia, IntPolynomial, LinalgError, PivotStrategy};
pub use maps::{CombinatorialMap, MapError, SimpleGraph};
