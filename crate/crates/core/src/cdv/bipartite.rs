use num_bigint::BigInt;
use serde::Serialize;

use super::sap::verify_sap_violation;
use super::{CdvError, SchrodingerOperator};
use crate::field::{QuadScalar, Rational};
use crate::linalg::ExactMatrix;
use crate::maps::SimpleGraph;

/// Halvings of the starting epsilon tried before giving up.
const MAX_HALVINGS: u32 = 20;

/// `eps * I_S - A_{K_{a,b}}` together with its certified data. Side A is
/// `0..a`, side B is `a..a+b`.
#[derive(Clone, Debug)]
pub struct BipartiteOperator {
    pub a: usize,
    pub b: usize,
    /// Sorted vertex subset carrying the `eps` diagonal.
    pub s: Vec<usize>,
    pub epsilon: Rational,
    pub operator: SchrodingerOperator,
    pub corank: usize,
}

/// Report form of a [`BipartiteOperator`].
#[derive(Clone, Debug, Serialize)]
pub struct BipartiteReport {
    pub a: usize,
    pub b: usize,
    pub s: Vec<usize>,
    pub epsilon: String,
    pub inertia: String,
    pub corank: usize,
    pub expected_corank: usize,
}

impl BipartiteOperator {
    pub fn report(&self) -> BipartiteReport {
        BipartiteReport {
            a: self.a,
            b: self.b,
            s: self.s.clone(),
            epsilon: self.epsilon.to_string(),
            inertia: self.operator.inertia().to_string(),
            corank: self.corank,
            expected_corank: self.a + self.b - 2 - self.s.len(),
        }
    }
}

fn validate(a: usize, b: usize, s: &[usize]) -> Result<Vec<usize>, CdvError> {
    if a == 0 || a > b {
        return Err(CdvError::Precondition(format!(
            "need 1 <= a <= b, got a = {a}, b = {b}"
        )));
    }
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&v) = s.iter().find(|&&v| v >= a + b) {
        return Err(CdvError::BadS(format!(
            "vertex {v} is not in K_{{{a},{b}}}"
        )));
    }
    let in_a = s.iter().filter(|&&v| v < a).count();
    if in_a == a {
        return Err(CdvError::BadS("S contains all of side A".into()));
    }
    if s.len() - in_a == b {
        return Err(CdvError::BadS("S contains all of side B".into()));
    }
    Ok(s)
}

/// The first `sa` vertices of side A and the first `sb` of side B.
pub fn bipartite_subset(a: usize, sa: usize, sb: usize) -> Vec<usize> {
    (0..sa).chain(a..a + sb).collect()
}

/// Builds `eps * I_S - A_{K_{a,b}}`, starting at `eps = 1/(4(a+b))` and
/// halving until membership in `M(G)` and corank `a + b - 2 - |S|` are both
/// certified exactly.
pub fn build_bipartite_operator(
    a: usize,
    b: usize,
    s: &[usize],
) -> Result<BipartiteOperator, CdvError> {
    let s = validate(a, b, s)?;
    let graph = SimpleGraph::complete_bipartite(a, b);
    let expected = a + b - 2 - s.len();
    let mut epsilon = Rational::new(BigInt::from(1), BigInt::from(4 * (a + b)));
    for _ in 0..=MAX_HALVINGS {
        let eps = QuadScalar::from_rational(&epsilon);
        let mut diagonal = vec![QuadScalar::zero(); a + b];
        for &v in &s {
            diagonal[v] = eps.clone();
        }
        let operator = SchrodingerOperator::from_parts(graph.clone(), &diagonal, &[])?;
        if operator.check_membership().is_ok() && operator.corank() == expected {
            return Ok(BipartiteOperator {
                a,
                b,
                s,
                epsilon,
                operator,
                corank: expected,
            });
        }
        epsilon /= BigInt::from(2);
    }
    Err(CdvError::EpsilonSearchFailed { a, b })
}

/// Basis of `{x : x . 1_{A\S} = 0, x . 1_{B\S} = 0, supp(x) disjoint from S}`:
/// differences `e_first - e_v` within each side outside `S`.
pub fn bipartite_kernel_basis(
    a: usize,
    b: usize,
    s: &[usize],
) -> Result<Vec<Vec<QuadScalar>>, CdvError> {
    let s = validate(a, b, s)?;
    let mut out = Vec::new();
    for side in [0..a, a..a + b] {
        let free: Vec<usize> = side.filter(|v| s.binary_search(v).is_err()).collect();
        for &v in &free[1..] {
            let mut x = vec![QuadScalar::zero(); a + b];
            x[free[0]] = QuadScalar::one();
            x[v] = QuadScalar::from_int(-1);
            out.push(x);
        }
    }
    Ok(out)
}

/// Whether two families of vectors span the same subspace: both have the
/// rank of their union.
pub fn same_span(n: usize, u: &[Vec<QuadScalar>], v: &[Vec<QuadScalar>]) -> Result<bool, CdvError> {
    let rank = |vs: &[Vec<QuadScalar>]| -> Result<usize, CdvError> {
        Ok(ExactMatrix::from_row_vectors(n, vs)?.rank())
    };
    let both: Vec<Vec<QuadScalar>> = u.iter().chain(v).cloned().collect();
    let r = rank(&both)?;
    Ok(rank(u)? == r && rank(v)? == r)
}

/// An operator on `K_{a,b}` of corank 4 without SAP, together with the
/// violating matrix `X = x y^T + y x^T`.
#[derive(Clone, Debug)]
pub struct SapWitness {
    pub construction: BipartiteOperator,
    pub x: ExactMatrix,
}

/// Takes `|A cap S| = a - 2`, `|B cap S| = b - 4`, and `x = e_v1 - e_v2`,
/// `y = e_v3 - e_v4` on the four vertices of `B \ S`; `X` is verified
/// against the definition of SAP before it is returned.
pub fn build_sap_witness(a: usize, b: usize) -> Result<SapWitness, CdvError> {
    if a < 3 || b < 4 || a > b {
        return Err(CdvError::Precondition(format!(
            "need 3 <= a <= b and b >= 4, got a = {a}, b = {b}"
        )));
    }
    let s = bipartite_subset(a, a - 2, b - 4);
    let construction = build_bipartite_operator(a, b, &s)?;
    let free: Vec<usize> = (a + b - 4..a + b).collect();
    let n = a + b;
    let mut x = ExactMatrix::zeros(n, n);
    // x y^T + y x^T with x = e0 - e1, y = e2 - e3 on the free vertices
    for (i, si) in [(0, 1), (1, -1)] {
        for (j, sj) in [(2, 1), (3, -1)] {
            let v = QuadScalar::from_int(si * sj);
            x.set(free[i], free[j], v.clone())?;
            x.set(free[j], free[i], v)?;
        }
    }
    verify_sap_violation(&construction.operator, &x)?;
    Ok(SapWitness { construction, x })
}
