//! Simple graphs, maps on surfaces built from coset incidence, and the
//! Heawood bound.

mod graph;
mod heawood;
mod map;

pub use graph::{GraphFile, SimpleGraph};
pub use heawood::{counterexample_range, heawood_gamma, CounterexampleRange};
pub use map::{build_map_from_cosets, genus_from_chi, CombinatorialMap, MapReport};

use crate::groups::GroupError;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge {0}-{1} listed twice")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("malformed incidence: {0}")]
    MalformedIncidence(String),
    #[error("Euler characteristic {0} is not that of an orientable surface")]
    OddEuler(i64),
    #[error("map is not regular: {0}")]
    NotRegular(String),
    #[error("invalid Euler characteristic {0}")]
    InvalidChi(i64),
    #[error("malformed graph: {0}")]
    Format(String),
}
