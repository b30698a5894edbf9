use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::SchrodingerOperator;
use crate::field::{QuadScalar, Rational};
use crate::linalg::{count_positive_real_roots, poly_expand_product, ExactMatrix, IntPolynomial};
use crate::maps::SimpleGraph;

/// The 7-vertex graph whose complement is a triangle on `{0, 1, 2}` plus a
/// 3-star with center 6 and leaves `{3, 4, 5}`.
pub fn build_q1_graph() -> SimpleGraph {
    let missing = [(0, 1), (0, 2), (1, 2), (3, 6), (4, 6), (5, 6)];
    SimpleGraph::new(7, missing).expect("valid").complement()
}

/// One point of the sample grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Q1Sample {
    pub a: String,
    pub x: String,
    pub row_sums: Vec<String>,
    /// Row 1 sum minus row 7 sum.
    pub gap: String,
    /// `gap == (a/3) (x^3 - 6x + 9)`.
    pub gap_matches_cubic: bool,
    /// The sample matrix has the sign pattern of the graph.
    pub in_pattern: bool,
    pub rank: usize,
    pub ones_is_eigenvector: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Q1Report {
    pub cubic: String,
    /// `(x + 3)(x^2 - 3x + 3)` expands to the cubic.
    pub factorization_holds: bool,
    /// The cubic is `-3` times `-x^3/3 + 2x - 3`.
    pub scaled_form_holds: bool,
    pub positive_roots: usize,
    pub samples: Vec<Q1Sample>,
    pub passed: bool,
}

/// The matrix the graph's CdV matrices are forced into when `1` is assumed
/// to be an eigenvector, with `a_4 = x a`:
///
/// ```text
/// 0    0    0    a     a     a     a4
/// ...  (rows 2, 3 equal row 1)
/// a    a    a    a4/3  a4/3  a4/3  0
/// ...  (rows 5, 6 equal row 4)
/// a4   a4   a4   0     0     0     -a4^3 / (3 a^2)
/// ```
pub fn q1_family(a: &Rational, x: &Rational) -> ExactMatrix {
    let a4 = a * x;
    let b = &a4 / Rational::from_integer(BigInt::from(3));
    let corner = -(&a4 * &a4 * &a4) / (Rational::from_integer(BigInt::from(3)) * a * a);
    let zero = Rational::zero();
    let q = |r: &Rational| QuadScalar::from_rational(r);
    let top = [&zero, &zero, &zero, a, a, a, &a4].map(q).to_vec();
    let mid = [a, a, a, &b, &b, &b, &zero].map(q).to_vec();
    let bottom = [&a4, &a4, &a4, &zero, &zero, &zero, &corner]
        .map(q)
        .to_vec();
    ExactMatrix::from_rows(vec![
        top.clone(),
        top.clone(),
        top,
        mid.clone(),
        mid.clone(),
        mid,
        bottom,
    ])
    .expect("7x7 rational matrix")
}

fn sample_grid() -> Vec<(Rational, Rational)> {
    let r = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    let a_values = [r(-1, 1), r(-1, 2), r(-2, 1)];
    let x_values = [r(1, 10), r(1, 2), r(1, 1), r(2, 1), r(3, 1), r(5, 1)];
    a_values
        .iter()
        .flat_map(|a| x_values.iter().map(move |x| (a.clone(), x.clone())))
        .collect()
}

/// Checks that no CdV matrix of [`build_q1_graph`] has the all-ones vector
/// as an eigenvector.
///
/// Equal row sums in the forced family reduce to `x^3 - 6x + 9 = 0` with
/// `x > 0`. The checks are the factorization of that cubic, the absence of
/// positive roots, and, on a grid of samples, that the row 1 and row 7 sums
/// differ by exactly `(a/3)(x^3 - 6x + 9)`.
pub fn verify_q1_counterexample() -> Q1Report {
    let cubic = IntPolynomial::from_i64(&[9, -6, 0, 1]);
    let product = poly_expand_product(&[
        (IntPolynomial::from_i64(&[3, 1]), 1),
        (IntPolynomial::from_i64(&[3, -3, 1]), 1),
    ]);
    let factorization_holds = product == cubic;

    let third = Rational::new(BigInt::from(1), BigInt::from(3));
    // -x^3/3 + 2x - 3, ascending coefficients
    let inner = [
        Rational::from_integer((-3).into()),
        Rational::from_integer(2.into()),
        Rational::zero(),
        -third,
    ];
    let scaled: Vec<Rational> = inner
        .iter()
        .map(|c| c * Rational::from_integer((-3).into()))
        .collect();
    let scaled_form_holds = scaled.len() == cubic.coefficients().len()
        && scaled
            .iter()
            .zip(cubic.coefficients())
            .all(|(s, c)| *s == Rational::from_integer(c.clone()));

    let positive_roots = count_positive_real_roots(&cubic).expect("nonzero cubic");

    let graph = build_q1_graph();
    let samples: Vec<Q1Sample> = sample_grid()
        .into_iter()
        .map(|(a, x)| {
            let m = q1_family(&a, &x);
            let sums: Vec<Rational> = (0..7)
                .map(|i| m.row(i).iter().map(|v| v.a()).sum())
                .collect();
            let gap = &sums[0] - &sums[6];
            let predicted = &a / Rational::from_integer(3.into()) * cubic.eval_rational(&x);
            let in_pattern = SchrodingerOperator::new(graph.clone(), m.clone())
                .and_then(|op| op.check_sign_pattern())
                .is_ok();
            Q1Sample {
                a: a.to_string(),
                x: x.to_string(),
                row_sums: sums.iter().map(ToString::to_string).collect(),
                gap: gap.to_string(),
                gap_matches_cubic: gap == predicted,
                in_pattern,
                rank: m.rank(),
                ones_is_eigenvector: sums.iter().all(|s| *s == sums[0]),
            }
        })
        .collect();

    let samples_ok = samples
        .iter()
        .all(|s| s.gap_matches_cubic && s.in_pattern && s.rank == 2 && !s.ones_is_eigenvector);
    Q1Report {
        cubic: cubic.to_string(),
        factorization_holds,
        scaled_form_holds,
        positive_roots,
        passed: factorization_holds && scaled_form_holds && positive_roots == 0 && samples_ok,
        samples,
    }
}
