use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::sap::{self, SapOutcome};
use super::CdvError;
use crate::field::QuadScalar;
use crate::linalg::{ExactMatrix, Inertia};
use crate::maps::{GraphFile, SimpleGraph};

/// A symmetric matrix indexed by the vertices of a graph, candidate member
/// of `M(G)`: negative on edges, zero on other off-diagonal pairs, free on
/// the diagonal, with exactly one negative eigenvalue.
///
/// Certificates (inertia, corank, SAP outcome) are computed on first request
/// and cached.
#[derive(Clone, Debug)]
pub struct SchrodingerOperator {
    graph: SimpleGraph,
    matrix: ExactMatrix,
    inertia: OnceLock<Inertia>,
    corank: OnceLock<usize>,
    sap: OnceLock<SapOutcome>,
}

impl SchrodingerOperator {
    /// Pairs a graph with a matrix. Requires matching dimensions and an
    /// exactly symmetric matrix; the sign pattern is checked by
    /// [`check_membership`](Self::check_membership).
    pub fn new(graph: SimpleGraph, matrix: ExactMatrix) -> Result<Self, CdvError> {
        let n = graph.vertex_count();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(CdvError::DimensionMismatch {
                vertices: n,
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let matrix = matrix
            .into_symmetric()
            .map_err(|_| CdvError::NotSymmetric)?;
        Ok(SchrodingerOperator {
            graph,
            matrix,
            inertia: OnceLock::new(),
            corank: OnceLock::new(),
            sap: OnceLock::new(),
        })
    }

    /// `diag(diagonal) - A_G`, or with `off_diagonal` overriding the `-1` on
    /// listed edges.
    pub fn from_parts(
        graph: SimpleGraph,
        diagonal: &[QuadScalar],
        off_diagonal: &[(usize, usize, QuadScalar)],
    ) -> Result<Self, CdvError> {
        let n = graph.vertex_count();
        if diagonal.len() != n {
            return Err(CdvError::DimensionMismatch {
                vertices: n,
                rows: diagonal.len(),
                cols: diagonal.len(),
            });
        }
        let mut m = ExactMatrix::zeros(n, n);
        for (i, v) in diagonal.iter().enumerate() {
            m.set(i, i, v.clone())?;
        }
        for &(u, v) in graph.edges() {
            m.set(u, v, QuadScalar::from_int(-1))?;
            m.set(v, u, QuadScalar::from_int(-1))?;
        }
        for (u, v, x) in off_diagonal {
            if *u >= n || *v >= n || u == v {
                return Err(CdvError::Format(format!(
                    "bad override position ({u}, {v})"
                )));
            }
            m.set(*u, *v, x.clone())?;
            m.set(*v, *u, x.clone())?;
        }
        Self::new(graph, m)
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Condition (i): strictly negative on edges, zero on non-edges.
    pub fn check_sign_pattern(&self) -> Result<(), CdvError> {
        let n = self.size();
        for u in 0..n {
            for v in u + 1..n {
                let s = self.matrix.get(u, v).sign();
                let ok = if self.graph.has_edge(u, v) {
                    s < 0
                } else {
                    s == 0
                };
                if !ok {
                    return Err(CdvError::SignPatternViolation { u, v });
                }
            }
        }
        Ok(())
    }

    /// Exact inertia of the matrix (cached).
    pub fn inertia(&self) -> Inertia {
        *self.inertia.get_or_init(|| {
            self.matrix
                .inertia_symmetric()
                .expect("symmetry verified at construction")
        })
    }

    /// Certifies membership in `M(G)`: the sign pattern and exactly one
    /// negative eigenvalue. Returns the inertia.
    pub fn check_membership(&self) -> Result<Inertia, CdvError> {
        self.check_sign_pattern()?;
        let inertia = self.inertia();
        if inertia.negatives != 1 {
            return Err(CdvError::NotOneNegative(inertia));
        }
        Ok(inertia)
    }

    /// Dimension of the kernel, by exact rank (cached).
    pub fn corank(&self) -> usize {
        *self.corank.get_or_init(|| self.matrix.corank())
    }

    pub fn kernel_basis(&self) -> Vec<Vec<QuadScalar>> {
        self.matrix.kernel_basis()
    }

    /// SAP outcome (cached); see [`sap::check_sap`].
    pub fn sap(&self) -> Result<&SapOutcome, CdvError> {
        self.sap_with_progress(None)
    }

    /// As [`sap`](Self::sap), reporting `(pivots found, columns)` during the
    /// rank computation when it is not cached yet.
    pub fn sap_with_progress(
        &self,
        progress: Option<&mut dyn FnMut(usize, usize)>,
    ) -> Result<&SapOutcome, CdvError> {
        if let Some(s) = self.sap.get() {
            return Ok(s);
        }
        let outcome = sap::check_sap(self, progress)?;
        Ok(self.sap.get_or_init(|| outcome))
    }

    pub fn to_file(&self) -> OperatorFile {
        let n = self.size();
        let off_diagonal = self
            .graph
            .edges()
            .iter()
            .filter(|&&(u, v)| !(-self.matrix.get(u, v)).is_one())
            .map(|&(u, v)| OffDiagonal {
                u,
                v,
                value: self.matrix.get(u, v).clone(),
            })
            .collect();
        OperatorFile {
            graph: self.graph.clone().into(),
            field_d: self.matrix.field_d(),
            diagonal: (0..n).map(|i| self.matrix.get(i, i).clone()).collect(),
            off_diagonal,
        }
    }

    pub fn from_file(file: &OperatorFile) -> Result<Self, CdvError> {
        let graph = SimpleGraph::try_from(file.graph.clone())?;
        let overrides: Vec<_> = file
            .off_diagonal
            .iter()
            .map(|o| (o.u, o.v, o.value.clone()))
            .collect();
        for x in file.diagonal.iter().chain(overrides.iter().map(|o| &o.2)) {
            if x.d() != 1 && x.d() != file.field_d {
                return Err(CdvError::Format(format!(
                    "entry {x} is not in Q[sqrt({})]",
                    file.field_d
                )));
            }
        }
        Self::from_parts(graph, &file.diagonal, &overrides)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("operator serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CdvError> {
        let file: OperatorFile =
            serde_json::from_str(text).map_err(|e| CdvError::Format(e.to_string()))?;
        Self::from_file(&file)
    }
}

/// Operator file: a graph, the field tag, the diagonal, and the edge
/// entries that differ from the default `-1`. Scalars are strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorFile {
    pub graph: GraphFile,
    pub field_d: u32,
    pub diagonal: Vec<QuadScalar>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub off_diagonal: Vec<OffDiagonal>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OffDiagonal {
    pub u: usize,
    pub v: usize,
    pub value: QuadScalar,
}

/// `shift * I - A_G`. Membership is not certified here.
pub fn build_shift_operator(g: &SimpleGraph, shift: &QuadScalar) -> SchrodingerOperator {
    let diagonal = vec![shift.clone(); g.vertex_count()];
    SchrodingerOperator::from_parts(g.clone(), &diagonal, &[])
        .expect("a shifted adjacency matrix is symmetric")
}

/// Whether `v` is a strictly positive eigenvector of the operator for a
/// negative eigenvalue, which on a connected graph makes it the
/// Perron-Frobenius vector. Returns the eigenvalue when it is.
pub fn perron_check(
    op: &SchrodingerOperator,
    v: &[QuadScalar],
) -> Result<Option<QuadScalar>, CdvError> {
    if !op.graph().is_connected() {
        return Err(CdvError::Disconnected);
    }
    if v.len() != op.size() {
        return Err(CdvError::DimensionMismatch {
            vertices: op.size(),
            rows: v.len(),
            cols: 1,
        });
    }
    if v.iter().any(|x| x.sign() <= 0) {
        return Ok(None);
    }
    let mv = op.matrix().mul_vec(v)?;
    let theta = mv[0].try_div(&v[0])?;
    for (a, b) in mv.iter().zip(v) {
        if *a != theta.try_mul(b)? {
            return Ok(None);
        }
    }
    Ok((theta.sign() < 0).then_some(theta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k23_membership() {
        let op = build_shift_operator(&SimpleGraph::complete_bipartite(2, 3), &QuadScalar::zero());
        assert_eq!(op.check_membership(), Ok(Inertia::new(1, 3, 1)));
        assert_eq!(op.corank(), 3);
    }

    #[test]
    fn k2() {
        let op = build_shift_operator(&SimpleGraph::complete(2), &QuadScalar::zero());
        assert_eq!(op.check_membership(), Ok(Inertia::new(1, 0, 1)));
    }

    #[test]
    fn sign_violation() {
        let g = SimpleGraph::path(3);
        let one = QuadScalar::one();
        let op = SchrodingerOperator::from_parts(
            g,
            &[one.clone(), one.clone(), one.clone()],
            &[(0, 1, one.clone())],
        )
        .unwrap();
        assert_eq!(
            op.check_membership(),
            Err(CdvError::SignPatternViolation { u: 0, v: 1 })
        );
    }

    #[test]
    fn too_many_negatives() {
        let op = build_shift_operator(&SimpleGraph::complete(3), &QuadScalar::from_int(-5));
        assert!(matches!(
            op.check_membership(),
            Err(CdvError::NotOneNegative(_))
        ));
    }

    #[test]
    fn c5_golden_shift() {
        let shift: QuadScalar = "(-1 + sqrt(5))/2".parse().unwrap();
        let op = build_shift_operator(&SimpleGraph::cycle(5).unwrap(), &shift);
        assert_eq!(op.check_membership(), Ok(Inertia::new(1, 2, 2)));
        assert_eq!(op.kernel_basis().len(), 2);
    }

    #[test]
    fn perron() {
        let op = build_shift_operator(&SimpleGraph::complete(3), &QuadScalar::zero());
        let ones = vec![QuadScalar::one(); 3];
        assert_eq!(perron_check(&op, &ones), Ok(Some(QuadScalar::from_int(-2))));
        let mut zero_entry = ones.clone();
        zero_entry[1] = QuadScalar::zero();
        assert_eq!(perron_check(&op, &zero_entry), Ok(None));
        let disc = build_shift_operator(&SimpleGraph::empty(2), &QuadScalar::zero());
        assert_eq!(perron_check(&disc, &ones[..2]), Err(CdvError::Disconnected));
    }

    #[test]
    fn file_round_trip() {
        let g = SimpleGraph::path(3);
        let d: Vec<QuadScalar> = ["1", "sqrt(2)", "-1/2"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let op = SchrodingerOperator::from_parts(g, &d, &[(1, 2, "-3".parse().unwrap())]).unwrap();
        let again = SchrodingerOperator::from_json(&op.to_json()).unwrap();
        assert_eq!(again.matrix(), op.matrix());
        assert_eq!(op.to_file().off_diagonal.len(), 1);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            SchrodingerOperator::new(SimpleGraph::path(3), ExactMatrix::zeros(2, 2)),
            Err(CdvError::DimensionMismatch { .. })
        ));
        assert_eq!(
            SchrodingerOperator::new(
                SimpleGraph::path(2),
                ExactMatrix::from_i64_rows(&[&[0, 1], &[2, 0]])
            )
            .err(),
            Some(CdvError::NotSymmetric)
        );
    }
}
