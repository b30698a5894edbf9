//! Discrete Schrödinger operators, membership in `M(G)`, the Strong Arnold
//! Property, and the constructions built on them.

mod bipartite;
mod operator;
mod q1;
mod sap;

pub use bipartite::{
    bipartite_kernel_basis, bipartite_subset, build_bipartite_operator, build_sap_witness,
    same_span, BipartiteOperator, BipartiteReport, SapWitness,
};
pub use operator::{
    build_shift_operator, perron_check, OffDiagonal, OperatorFile, SchrodingerOperator,
};
pub use q1::{build_q1_graph, q1_family, verify_q1_counterexample, Q1Report, Q1Sample};
pub use sap::{build_sap_system, check_sap, verify_sap_violation, SapOutcome, SapSystem};

use crate::field::FieldError;
use crate::linalg::{Inertia, LinalgError};
use crate::maps::MapError;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CdvError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("graph has {vertices} vertices but the matrix is {rows}x{cols}")]
    DimensionMismatch {
        vertices: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("entry ({u}, {v}) has the wrong sign for the graph")]
    SignPatternViolation { u: usize, v: usize },
    #[error("inertia {0} does not have exactly one negative eigenvalue")]
    NotOneNegative(Inertia),
    #[error("invalid subset S: {0}")]
    BadS(String),
    #[error("no epsilon certified the construction on K_{{{a},{b}}}")]
    EpsilonSearchFailed { a: usize, b: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("SAP witness rejected: {0}")]
    WitnessRejected(String),
    #[error("malformed operator: {0}")]
    Format(String),
}

impl From<FieldError> for CdvError {
    fn from(e: FieldError) -> Self {
        CdvError::Linalg(e.into())
    }
}
