use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExactMatrix, IntPolynomial, LinalgError};

impl ExactMatrix {
    /// `det(xI - M)` for an integer matrix, by Berkowitz's division-free
    /// algorithm: the characteristic polynomial of each leading principal
    /// submatrix is obtained from the previous one by a Toeplitz product.
    pub fn charpoly(&self) -> Result<IntPolynomial, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let n = self.rows();
        let a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| v.to_bigint().ok_or(LinalgError::NonIntegerEntries))
                    .collect()
            })
            .collect::<Result<_, _>>()?;

        // Coefficients, highest degree first; starts as the empty matrix's `1`.
        let mut poly = vec![BigInt::one()];
        for r in 0..n {
            // c = [1, -a_rr, -R S, -R A S, ..., -R A^{r-1} S] with R = a[r][..r],
            // S = a[..r][r] and A the leading r x r block.
            let mut c = Vec::with_capacity(r + 2);
            c.push(BigInt::one());
            c.push(-&a[r][r]);
            let mut v: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
            for k in 0..r {
                let dot: BigInt = (0..r).map(|j| &a[r][j] * &v[j]).sum();
                c.push(-dot);
                if k + 1 < r {
                    v = (0..r)
                        .map(|i| (0..r).map(|j| &a[i][j] * &v[j]).sum())
                        .collect();
                }
            }
            let mut next = vec![BigInt::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for j in 0..=i.min(r) {
                    *slot += &c[i - j] * &poly[j];
                }
            }
            poly = next;
        }
        poly.reverse();
        Ok(IntPolynomial::new(poly))
    }
}
