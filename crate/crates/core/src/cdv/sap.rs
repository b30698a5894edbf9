use std::collections::HashMap;

use serde::Serialize;

use super::{CdvError, SchrodingerOperator};
use crate::field::QuadScalar;
use crate::linalg::ExactMatrix;

/// Linear system whose trivial kernel is equivalent to the Strong Arnold
/// Property.
///
/// The unknowns are the entries `X_ab` of a symmetric matrix on the
/// non-edges `{a, b}`, `a < b`. Each ordered pair `(u, w)`, `u != w`, gives
/// the equation `(M X)_uw = 0`. Diagonal equations are left out since
/// `(M X)_uu = 0` holds for every such `X`.
#[derive(Clone, Debug)]
pub struct SapSystem {
    matrix: ExactMatrix,
    vertices: usize,
    row_pairs: Vec<(usize, usize)>,
    columns: Vec<(usize, usize)>,
    column_index: HashMap<(usize, usize), usize>,
}

impl SapSystem {
    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn row_count(&self) -> usize {
        self.row_pairs.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    /// `(u, w)` for every row.
    pub fn row_pairs(&self) -> &[(usize, usize)] {
        &self.row_pairs
    }

    /// Non-edge `(a, b)`, `a < b`, for every column.
    pub fn columns(&self) -> &[(usize, usize)] {
        &self.columns
    }

    pub fn row_index(&self, u: usize, w: usize) -> Option<usize> {
        let n = self.vertices;
        (u != w && u < n && w < n).then(|| u * (n - 1) + if w < u { w } else { w - 1 })
    }

    pub fn column_index(&self, a: usize, b: usize) -> Option<usize> {
        self.column_index.get(&(a.min(b), a.max(b))).copied()
    }

    /// The symmetric matrix with `X_ab = X_ba = x[column of {a, b}]`.
    pub fn assemble_x(&self, x: &[QuadScalar]) -> Result<ExactMatrix, CdvError> {
        let mut m = ExactMatrix::zeros(self.vertices, self.vertices);
        for (&(a, b), v) in self.columns.iter().zip(x) {
            m.set(a, b, v.clone())?;
            m.set(b, a, v.clone())?;
        }
        Ok(m)
    }
}

pub fn build_sap_system(op: &SchrodingerOperator) -> SapSystem {
    let n = op.size();
    let m = op.matrix();
    let columns = op.graph().non_edges();
    let column_index: HashMap<(usize, usize), usize> =
        columns.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let row_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&w| w != u).map(move |w| (u, w)))
        .collect();
    let cols = columns.len();
    let mut entries = vec![QuadScalar::zero(); row_pairs.len() * cols];
    for (r, &(u, w)) in row_pairs.iter().enumerate() {
        // (M X)_uw = sum over non-edges {a, w} of M(u, a) X_aw
        for a in 0..n {
            if let Some(&k) = column_index.get(&(a.min(w), a.max(w))) {
                entries[r * cols + k] = m.get(u, a).clone();
            }
        }
    }
    let matrix = ExactMatrix::with_field(row_pairs.len(), cols, m.field_d(), entries)
        .expect("entries come from one matrix");
    SapSystem {
        matrix,
        vertices: n,
        row_pairs,
        columns,
        column_index,
    }
}

/// Result of an SAP check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SapOutcome {
    pub holds: bool,
    pub rank: usize,
    pub rows: usize,
    pub columns: usize,
    pub row_filter_used: bool,
    /// A verified nonzero `X` violating SAP, present exactly when SAP fails.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_matrix")]
    pub witness: Option<ExactMatrix>,
}

fn ser_matrix<S: serde::Serializer>(m: &Option<ExactMatrix>, s: S) -> Result<S::Ok, S::Error> {
    match m {
        Some(m) => {
            let rows: Vec<Vec<String>> = (0..m.rows())
                .map(|i| m.row(i).iter().map(ToString::to_string).collect())
                .collect();
            s.serialize_some(&rows)
        }
        None => s.serialize_none(),
    }
}

/// SAP holds exactly when the system has full column rank. On failure a
/// kernel vector is turned into `X` and checked against the definition
/// directly, so a wrong rank cannot yield an unverified failure.
pub fn check_sap(
    op: &SchrodingerOperator,
    progress: Option<&mut dyn FnMut(usize, usize)>,
) -> Result<SapOutcome, CdvError> {
    let system = build_sap_system(op);
    let cert = system.matrix().rank_certificate(progress);
    let columns = system.column_count();
    let mut outcome = SapOutcome {
        holds: cert.rank == columns,
        rank: cert.rank,
        rows: system.row_count(),
        columns,
        row_filter_used: cert.row_filter_used,
        witness: None,
    };
    if !outcome.holds {
        let kernel = system.matrix().kernel_basis();
        let x = kernel.first().ok_or_else(|| {
            CdvError::WitnessRejected("rank deficient system with empty kernel".into())
        })?;
        let witness = system.assemble_x(x)?;
        verify_sap_violation(op, &witness)?;
        outcome.witness = Some(witness);
    }
    Ok(outcome)
}

/// Checks that `X` is a nonzero symmetric matrix vanishing on edges and the
/// diagonal with `M X = 0`, which certifies that SAP fails.
pub fn verify_sap_violation(op: &SchrodingerOperator, x: &ExactMatrix) -> Result<(), CdvError> {
    let n = op.size();
    let reject = |why: &str| Err(CdvError::WitnessRejected(why.to_string()));
    if x.rows() != n || x.cols() != n {
        return reject("wrong dimensions");
    }
    if x.is_zero() {
        return reject("X is zero");
    }
    if !x.is_symmetric() {
        return reject("X is not symmetric");
    }
    if (0..n).any(|u| !x.get(u, u).is_zero()) {
        return reject("X has a nonzero diagonal entry");
    }
    if op
        .graph()
        .edges()
        .iter()
        .any(|&(u, v)| !x.get(u, v).is_zero())
    {
        return reject("X is nonzero on an edge");
    }
    if !op.matrix().mul(x)?.is_zero() {
        return reject("M X is not zero");
    }
    Ok(())
}
