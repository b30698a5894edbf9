//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use cdv_core::{ExactMatrix, Inertia, QuadScalar, Rational, SimpleGraph};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

/// Rank over `Q[sqrt(d)]` computed without the library's field type: each
/// entry `a + b sqrt(d)` becomes the rational block `[[a, d b], [b, a]]`
/// (multiplication by the entry in the basis `1, sqrt(d)`), and the rational
/// rank of the blown-up matrix is twice the rank over the field.
pub fn oracle_rank(m: &ExactMatrix) -> usize {
    let d = Rational::from_integer(BigInt::from(m.field_d()));
    let (r, c) = (m.rows(), m.cols());
    let mut a = vec![vec![Rational::zero(); 2 * c]; 2 * r];
    for i in 0..r {
        for j in 0..c {
            let x = m.get(i, j);
            let (p, q) = (x.a(), x.b());
            a[2 * i][2 * j] = p.clone();
            a[2 * i][2 * j + 1] = &d * &q;
            a[2 * i + 1][2 * j] = q;
            a[2 * i + 1][2 * j + 1] = p;
        }
    }
    let rank = dense_rational_rank(a);
    assert_eq!(rank % 2, 0, "block rank must be even");
    rank / 2
}

/// Textbook Gaussian elimination over the rationals.
pub fn dense_rational_rank(mut a: Vec<Vec<Rational>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            if !a[i][col].is_zero() {
                let f = &a[i][col] / &a[rank][col];
                for j in col..cols {
                    let t = &f * &a[rank][j];
                    a[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Inertia of a real symmetric integer matrix by Descartes' rule of signs on
/// its characteristic polynomial, which is exact because every root is real.
pub fn oracle_inertia(m: &ExactMatrix) -> Inertia {
    let p = m.charpoly().expect("integer matrix");
    let coeffs = p.coefficients();
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let changes = |cs: Vec<BigInt>| {
        let signs: Vec<bool> = cs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let positives = changes(coeffs.to_vec());
    let negatives = changes(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect(),
    );
    Inertia::new(negatives, zeros, positives)
}

pub const FIELDS: [u32; 4] = [1, 2, 5, 7];

/// A small random element of `Q[sqrt(d)]`, zero with probability `zero_p`.
pub fn random_scalar<R: Rng>(rng: &mut R, d: u32, zero_p: f64) -> QuadScalar {
    if rng.gen_bool(zero_p) {
        return QuadScalar::zero();
    }
    let frac = |rng: &mut R| {
        Rational::new(
            BigInt::from(rng.gen_range(-4i64..=4)),
            BigInt::from(rng.gen_range(1i64..=3)),
        )
    };
    let a = frac(rng);
    let b = if d == 1 { Rational::zero() } else { frac(rng) };
    QuadScalar::new(&a, &b, u64::from(d)).expect("valid field")
}

/// Random matrix, sometimes built as a product of thinner factors so that
/// rank-deficient cases are common.
pub fn random_matrix<R: Rng>(rng: &mut R, d: u32, rows: usize, cols: usize) -> ExactMatrix {
    let zero_p = rng.gen_range(0.0..0.7);
    let dense = |rng: &mut R, r: usize, c: usize| {
        ExactMatrix::from_fn(r, c, |_, _| random_scalar(rng, d, zero_p)).expect("one field")
    };
    if rng.gen_bool(0.4) {
        let k = rng.gen_range(0..=rows.min(cols));
        let left = dense(rng, rows, k);
        let right = dense(rng, k, cols);
        if k == 0 {
            return ExactMatrix::zeros(rows, cols);
        }
        left.mul(&right).expect("conformable")
    } else {
        dense(rng, rows, cols)
    }
}

pub fn random_symmetric<R: Rng>(rng: &mut R, d: u32, n: usize) -> ExactMatrix {
    let zero_p = rng.gen_range(0.0..0.6);
    let mut m = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = random_scalar(rng, d, zero_p);
            m.set(i, j, v.clone()).unwrap();
            m.set(j, i, v).unwrap();
        }
    }
    m
}

/// Random connected graph: a random spanning tree plus random extra edges.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize) -> SimpleGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = std::collections::BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (u, v) = (order[i], order[j]);
        edges.insert((u.min(v), u.max(v)));
    }
    let p = rng.gen_range(0.0..0.8);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    SimpleGraph::new(n, edges).unwrap()
}

/// Exact determinant by the oracle's own elimination.
pub fn rational_det(m: &ExactMatrix) -> Rational {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| m.row(i).iter().map(|x| x.a()).collect())
        .collect();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        for i in col + 1..n {
            let f = &a[i][col] / &a[col][col];
            for j in col..n {
                let t = &f * &a[col][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// `diag - A_G` on a random connected graph with integer diagonal, where
/// half the time the last diagonal entry is solved for to make the matrix
/// singular (the determinant is affine in that entry).
pub fn random_operator_matrix<R: Rng>(rng: &mut R) -> (SimpleGraph, Vec<QuadScalar>) {
    let n = rng.gen_range(2..=7);
    let g = random_connected_graph(rng, n);
    let mut diag: Vec<QuadScalar> = (0..n)
        .map(|_| QuadScalar::from_int(rng.gen_range(-3..=3)))
        .collect();
    if rng.gen_bool(0.5) {
        let build = |diag: &[QuadScalar]| {
            let mut m = g
                .adjacency_matrix()
                .scale(&QuadScalar::from_int(-1))
                .unwrap();
            for (i, v) in diag.iter().enumerate() {
                m.set(i, i, v.clone()).unwrap();
            }
            m
        };
        diag[n - 1] = QuadScalar::zero();
        let det0 = rational_det(&build(&diag));
        diag[n - 1] = QuadScalar::one();
        let slope = rational_det(&build(&diag)) - &det0;
        diag[n - 1] = if slope.is_zero() {
            QuadScalar::zero()
        } else {
            QuadScalar::from_rational(&(-det0 / slope))
        };
    }
    (g, diag)
}
