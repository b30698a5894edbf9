use std::fmt;

use serde::{Deserialize, Serialize};

use super::elim::{eliminate, Exact, Options, PivotStrategy, SparseRow};
use super::{modular, LinalgError};
use crate::field::quad::join_tags;
use crate::field::{is_squarefree, FieldError, QuadScalar};

/// Dense row-major matrix over one field `Q[sqrt(field_d)]`.
#[derive(Clone)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field_d: u32,
    entries: Vec<QuadScalar>,
    symmetric: bool,
}

// Equality ignores the cached symmetry flag.
impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.field_d == other.field_d
            && self.entries == other.entries
    }
}

impl Eq for ExactMatrix {}

/// Result of an exact rank computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    /// `(row, col)` of every pivot, in elimination order. Each pivot was an
    /// exactly nonzero entry at the time it was chosen.
    pub pivots: Vec<(usize, usize)>,
    /// Whether a modular pre-pass restricted the exact elimination to a
    /// subset of rows.
    pub row_filter_used: bool,
}

/// Tall matrices with at least this many entries get the modular row filter.
const ROW_FILTER_MIN_ENTRIES: usize = 20_000;

impl ExactMatrix {
    /// Builds a matrix from row-major entries, inferring the field tag.
    pub fn new(rows: usize, cols: usize, entries: Vec<QuadScalar>) -> Result<Self, LinalgError> {
        let mut d = 1;
        for e in &entries {
            d = join_tags(d, e.d())?;
        }
        Self::with_field(rows, cols, d, entries)
    }

    /// Builds a matrix over `Q[sqrt(field_d)]`; every entry must be rational
    /// or tagged `field_d`.
    pub fn with_field(
        rows: usize,
        cols: usize,
        field_d: u32,
        entries: Vec<QuadScalar>,
    ) -> Result<Self, LinalgError> {
        if !is_squarefree(u64::from(field_d)) {
            return Err(FieldError::InvalidTag(u64::from(field_d)).into());
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: (rows, cols),
                found: (entries.len(), 1),
            });
        }
        for e in &entries {
            if e.d() != 1 && e.d() != field_d {
                return Err(FieldError::FieldMismatch {
                    left: field_d,
                    right: e.d(),
                }
                .into());
            }
        }
        Ok(ExactMatrix {
            rows,
            cols,
            field_d,
            entries,
            symmetric: false,
        })
    }

    pub fn from_rows(rows: Vec<Vec<QuadScalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| QuadScalar::from_int(v)).collect())
                .collect(),
        )
        .expect("rectangular integer matrix")
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> QuadScalar,
    ) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            field_d: 1,
            entries: vec![QuadScalar::zero(); rows * cols],
            symmetric: rows == cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = QuadScalar::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field_d(&self) -> u32 {
        self.field_d
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[QuadScalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[QuadScalar] {
        &self.entries
    }

    /// Overwrites one entry. Clears the symmetry flag.
    pub fn set(&mut self, i: usize, j: usize, v: QuadScalar) -> Result<(), LinalgError> {
        if v.d() != 1 && v.d() != self.field_d {
            if self.field_d == 1 && self.entries.iter().all(QuadScalar::is_rational) {
                self.field_d = v.d();
            } else {
                return Err(FieldError::FieldMismatch {
                    left: self.field_d,
                    right: v.d(),
                }
                .into());
            }
        }
        self.entries[i * self.cols + j] = v;
        self.symmetric = false;
        Ok(())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Checks `m[i][j] == m[j][i]` for every pair.
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Verifies symmetry and records it.
    pub fn into_symmetric(mut self) -> Result<Self, LinalgError> {
        if !self.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        self.symmetric = true;
        Ok(self)
    }

    /// Whether symmetry has been verified and recorded.
    pub fn symmetric_flag(&self) -> bool {
        self.symmetric
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(QuadScalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            field_d: self.field_d,
            entries,
            symmetric: self.symmetric,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: (self.cols, other.cols),
                found: (other.rows, other.cols),
            });
        }
        let d = join_tags(self.field_d, other.field_d)?;
        let mut entries = vec![QuadScalar::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let e = &mut entries[i * other.cols + j];
                        *e = &*e + &(a * b);
                    }
                }
            }
        }
        Self::with_field(self.rows, other.cols, d, entries)
    }

    pub fn mul_vec(&self, v: &[QuadScalar]) -> Result<Vec<QuadScalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: (self.cols, 1),
                found: (v.len(), 1),
            });
        }
        for x in v {
            join_tags(self.field_d, x.d())?;
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(QuadScalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&QuadScalar, &QuadScalar) -> Result<QuadScalar, FieldError>,
    ) -> Result<Self, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch {
                expected: (self.rows, self.cols),
                found: (other.rows, other.cols),
            });
        }
        let d = join_tags(self.field_d, other.field_d)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Self::with_field(self.rows, self.cols, d, entries)
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, QuadScalar::try_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, QuadScalar::try_sub)
    }

    pub fn scale(&self, s: &QuadScalar) -> Result<Self, LinalgError> {
        let d = join_tags(self.field_d, s.d())?;
        let entries = self.entries.iter().map(|e| e * s).collect();
        let mut m = Self::with_field(self.rows, self.cols, d, entries)?;
        m.symmetric = self.symmetric;
        Ok(m)
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&ExactMatrix]) -> Result<Self, LinalgError> {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut entries = Vec::new();
        let mut rows = 0;
        for m in parts {
            if m.cols != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: (m.rows, cols),
                    found: (m.rows, m.cols),
                });
            }
            rows += m.rows;
            entries.extend(m.entries.iter().cloned());
        }
        Self::new(rows, cols, entries)
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_row_vectors(cols: usize, vectors: &[Vec<QuadScalar>]) -> Result<Self, LinalgError> {
        if vectors.iter().any(|v| v.len() != cols) {
            return Err(LinalgError::Ragged);
        }
        Self::new(
            vectors.len(),
            cols,
            vectors.iter().flatten().cloned().collect(),
        )
    }

    pub(crate) fn sparse_rows(&self) -> Vec<SparseRow<QuadScalar>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j as u32, v.clone()))
                    .collect()
            })
            .collect()
    }

    /// Exact rank.
    ///
    /// Tall, large matrices first pass through a modular filter that picks a
    /// candidate set of independent rows; exact elimination then runs on those
    /// rows alone. If that already reaches full column rank the answer is
    /// certified, otherwise the exact elimination is rerun on every row.
    pub fn rank(&self) -> usize {
        self.rank_certificate(None).rank
    }

    /// Exact rank by plain elimination over all rows.
    pub fn rank_with(&self, strategy: PivotStrategy) -> usize {
        let mut rows = self.sparse_rows();
        eliminate(
            &Exact,
            &mut rows,
            self.cols,
            Options {
                strategy,
                reduce_above: false,
                progress: None,
            },
        )
        .len()
    }

    /// Exact rank with the pivots that witness it. `progress` receives
    /// `(pivots found, max possible)` after every exact pivot.
    pub fn rank_certificate(
        &self,
        mut progress: Option<&mut dyn FnMut(usize, usize)>,
    ) -> RankCertificate {
        let rows = self.sparse_rows();
        if self.rows > self.cols && self.rows * self.cols >= ROW_FILTER_MIN_ENTRIES {
            if let Some(sel) = modular::independent_rows(&rows, self.cols, self.field_d) {
                if sel.len() == self.cols {
                    let mut sub: Vec<_> = sel.iter().map(|&i| rows[i].clone()).collect();
                    let pivots = eliminate(
                        &Exact,
                        &mut sub,
                        self.cols,
                        Options {
                            strategy: PivotStrategy::Sparsest,
                            reduce_above: false,
                            progress: progress
                                .as_mut()
                                .map(|p| &mut **p as &mut dyn FnMut(usize, usize)),
                        },
                    );
                    if pivots.len() == self.cols {
                        return RankCertificate {
                            rank: pivots.len(),
                            pivots: pivots.iter().map(|p| (sel[p.row], p.col)).collect(),
                            row_filter_used: true,
                        };
                    }
                }
            }
        }
        let mut rows = rows;
        let pivots = eliminate(
            &Exact,
            &mut rows,
            self.cols,
            Options {
                strategy: PivotStrategy::Sparsest,
                reduce_above: false,
                progress: progress
                    .as_mut()
                    .map(|p| &mut **p as &mut dyn FnMut(usize, usize)),
            },
        );
        RankCertificate {
            rank: pivots.len(),
            pivots: pivots.iter().map(|p| (p.row, p.col)).collect(),
            row_filter_used: false,
        }
    }

    /// Reduced row echelon form: the nonzero rows and their pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut rows = self.sparse_rows();
        let pivots = eliminate(
            &Exact,
            &mut rows,
            self.cols,
            Options {
                strategy: PivotStrategy::FirstNonzero,
                reduce_above: true,
                progress: None,
            },
        );
        let mut entries = vec![QuadScalar::zero(); pivots.len() * self.cols];
        for (k, p) in pivots.iter().enumerate() {
            for (c, v) in &rows[p.row] {
                entries[k * self.cols + *c as usize] = v.clone();
            }
        }
        let m = Self::with_field(pivots.len(), self.cols, self.field_d, entries)
            .expect("entries come from this matrix's field");
        (m, pivots.iter().map(|p| p.col).collect())
    }

    /// Canonical null-space basis read off the reduced echelon form: one
    /// vector per free column, with a 1 in that column and 0 in the others.
    pub fn kernel_basis(&self) -> Vec<Vec<QuadScalar>> {
        let (r, pivot_cols) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![QuadScalar::zero(); self.cols];
                v[f] = QuadScalar::one();
                for (k, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = -r.get(k, f);
                }
                v
            })
            .collect()
    }

    /// Dimension of the kernel (`cols - rank`).
    pub fn corank(&self) -> usize {
        self.cols - self.rank()
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> Result<QuadScalar, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut rows = self.sparse_rows();
        let pivots = eliminate(
            &Exact,
            &mut rows,
            self.cols,
            Options {
                strategy: PivotStrategy::FirstNonzero,
                reduce_above: false,
                progress: None,
            },
        );
        if pivots.len() < self.rows {
            return Ok(QuadScalar::zero());
        }
        // Pivot k sits in row pivots[k].row and column k; the row permutation
        // contributes its sign.
        let mut perm: Vec<usize> = pivots.iter().map(|p| p.row).collect();
        let mut sign = 1i64;
        for i in 0..perm.len() {
            while perm[i] != i {
                let j = perm[i];
                perm.swap(i, j);
                sign = -sign;
            }
        }
        Ok(pivots
            .iter()
            .fold(QuadScalar::from_int(sign), |acc, p| acc * &p.value))
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            rows: self.rows,
            cols: self.cols,
            field_d: self.field_d,
            entries: self.entries.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_file(file: &MatrixFile) -> Result<Self, LinalgError> {
        let entries = file
            .entries
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<QuadScalar>, _>>()?;
        Self::with_field(file.rows, file.cols, file.field_d, entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, LinalgError> {
        let file: MatrixFile =
            serde_json::from_str(text).map_err(|e| LinalgError::Format(e.to_string()))?;
        Self::from_file(&file)
    }
}

/// On-disk matrix: `{rows, cols, field_d, entries}` with entries as scalar
/// strings in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub field_d: u32,
    pub entries: Vec<String>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ExactMatrix {}x{} over Q[sqrt({})]",
            self.rows, self.cols, self.field_d
        )?;
        for i in 0..self.rows.min(12) {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
