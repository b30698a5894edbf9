//! Finitely presented groups: presentation parsing, Todd-Coxeter coset
//! enumeration and concrete realization of finite groups as permutations.

mod coset;
mod presentation;
mod realize;

pub use coset::{coset_enumerate, element_order, CosetTable, DEFAULT_MAX_COSETS};
pub use presentation::{
    named_presentation, parse_presentation, Letter, Presentation, Word, GAMMA10,
};
pub use realize::{FiniteGroup, SubgroupCosets};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("coset enumeration exceeded {0} cosets")]
    CapExceeded(usize),
}
