use serde::{Deserialize, Serialize};

use super::{ExactMatrix, LinalgError};
use crate::field::QuadScalar;

/// Counts of negative, zero and positive eigenvalues of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub negatives: usize,
    pub zeros: usize,
    pub positives: usize,
}

impl Inertia {
    pub fn new(negatives: usize, zeros: usize, positives: usize) -> Self {
        Inertia {
            negatives,
            zeros,
            positives,
        }
    }

    pub fn dimension(&self) -> usize {
        self.negatives + self.zeros + self.positives
    }
}

impl std::fmt::Display for Inertia {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.negatives, self.zeros, self.positives
        )
    }
}

impl ExactMatrix {
    /// Inertia by symmetric Gaussian elimination (a congruence to block
    /// diagonal form, so Sylvester's law applies).
    ///
    /// A nonzero diagonal entry is a 1x1 pivot and contributes its sign. When
    /// every remaining diagonal entry is zero but some off-diagonal `s` is
    /// not, the block `[[0, s], [s, 0]]` is pivoted on as a unit; its
    /// eigenvalues are `+-s`, one of each sign.
    pub fn inertia_symmetric(&self) -> Result<Inertia, LinalgError> {
        if !self.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        let n = self.rows();
        let mut s: Vec<Vec<QuadScalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut active: Vec<usize> = (0..n).collect();
        let mut out = Inertia::new(0, 0, 0);

        while !active.is_empty() {
            if let Some(pos) = active.iter().position(|&i| !s[i][i].is_zero()) {
                let i = active.remove(pos);
                let pivot = s[i][i].clone();
                match pivot.sign() {
                    1 => out.positives += 1,
                    _ => out.negatives += 1,
                }
                let inv = pivot.inv().expect("nonzero pivot");
                let col: Vec<(usize, QuadScalar)> = active
                    .iter()
                    .filter(|&&j| !s[j][i].is_zero())
                    .map(|&j| (j, &s[j][i] * &inv))
                    .collect();
                for (j, t) in &col {
                    for &l in &active {
                        if !s[i][l].is_zero() {
                            s[*j][l] = s[*j][l].sub_mul(t, &s[i][l]);
                        }
                    }
                }
                continue;
            }
            let pair = active.iter().enumerate().find_map(|(a, &i)| {
                active[a + 1..]
                    .iter()
                    .find(|&&k| !s[i][k].is_zero())
                    .map(|&k| (i, k))
            });
            let Some((i, k)) = pair else {
                out.zeros += active.len();
                break;
            };
            active.retain(|&j| j != i && j != k);
            out.negatives += 1;
            out.positives += 1;
            // S' = S - [S_ji S_jk] [[0, 1/s], [1/s, 0]] [S_il; S_kl]
            let inv = s[i][k].inv().expect("nonzero off-diagonal");
            let coeffs: Vec<(usize, QuadScalar, QuadScalar)> = active
                .iter()
                .map(|&j| (j, &s[j][i] * &inv, &s[j][k] * &inv))
                .filter(|(_, a, b)| !a.is_zero() || !b.is_zero())
                .collect();
            for (j, a, b) in &coeffs {
                for &l in &active {
                    let mut v = s[*j][l].clone();
                    if !a.is_zero() && !s[k][l].is_zero() {
                        v = v.sub_mul(a, &s[k][l]);
                    }
                    if !b.is_zero() && !s[i][l].is_zero() {
                        v = v.sub_mul(b, &s[i][l]);
                    }
                    s[*j][l] = v;
                }
            }
        }
        Ok(out)
    }
}
