//! Sparse row elimination shared by the exact and the modular code paths.

use std::collections::BTreeSet;

use crate::field::QuadScalar;

/// How the elimination picks its next pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PivotStrategy {
    /// Columns left to right; the lowest-index row with a nonzero entry.
    FirstNonzero,
    /// Markowitz-lite: the column with the fewest nonzeros among unpivoted
    /// rows, then the shortest row in it. Ties break on the lower index.
    #[default]
    Sparsest,
}

/// Arithmetic needed by the elimination loop.
pub(crate) trait ElimField {
    type Elem: Clone;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    /// `x - f*y`
    fn sub_mul(&self, x: &Self::Elem, f: &Self::Elem, y: &Self::Elem) -> Self::Elem;
}

/// Exact arithmetic in `Q[sqrt(d)]`; tags are validated when the matrix is built.
pub(crate) struct Exact;

impl ElimField for Exact {
    type Elem = QuadScalar;
    fn is_zero(&self, x: &QuadScalar) -> bool {
        x.is_zero()
    }
    fn inv(&self, x: &QuadScalar) -> QuadScalar {
        x.inv().expect("pivot is nonzero")
    }
    fn mul(&self, x: &QuadScalar, y: &QuadScalar) -> QuadScalar {
        x * y
    }
    fn neg(&self, x: &QuadScalar) -> QuadScalar {
        -x
    }
    fn sub_mul(&self, x: &QuadScalar, f: &QuadScalar, y: &QuadScalar) -> QuadScalar {
        x.sub_mul(f, y)
    }
}

pub(crate) type SparseRow<E> = Vec<(u32, E)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Pivot<E> {
    pub row: usize,
    pub col: usize,
    /// Entry value at the moment it was chosen, before normalization.
    pub value: E,
}

pub(crate) struct Options<'a> {
    pub strategy: PivotStrategy,
    /// Also clear pivot columns from earlier pivot rows (reduced echelon form).
    pub reduce_above: bool,
    pub progress: Option<&'a mut dyn FnMut(usize, usize)>,
}

/// Row-reduces `rows` in place and returns the pivots in the order chosen.
/// Pivot rows end up normalized (pivot entry 1).
pub(crate) fn eliminate<F: ElimField>(
    field: &F,
    rows: &mut [SparseRow<F::Elem>],
    cols: usize,
    mut opts: Options<'_>,
) -> Vec<Pivot<F::Elem>> {
    // col_rows[c]: rows holding a nonzero in column c. With `reduce_above` it
    // also tracks rows that already served as pivots.
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    for (i, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c as usize].insert(i);
        }
    }
    let mut is_pivot_row = vec![false; rows.len()];
    let mut col_done = vec![false; cols];
    let mut pivots = Vec::new();
    let mut next_col = 0usize;
    let max_rank = cols.min(rows.len());

    while pivots.len() < max_rank {
        let c = match opts.strategy {
            PivotStrategy::FirstNonzero => {
                if next_col == cols {
                    break;
                }
                next_col += 1;
                next_col - 1
            }
            PivotStrategy::Sparsest => {
                let mut best: Option<(usize, usize)> = None;
                for c in 0..cols {
                    if col_done[c] {
                        continue;
                    }
                    let n = if opts.reduce_above {
                        col_rows[c].iter().filter(|&&i| !is_pivot_row[i]).count()
                    } else {
                        col_rows[c].len()
                    };
                    if n > 0 && best.is_none_or(|(bn, _)| n < bn) {
                        best = Some((n, c));
                    }
                }
                match best {
                    Some((_, c)) => c,
                    None => break,
                }
            }
        };
        col_done[c] = true;

        let candidates = col_rows[c].iter().copied().filter(|&i| !is_pivot_row[i]);
        let r = match opts.strategy {
            PivotStrategy::FirstNonzero => candidates.min(),
            PivotStrategy::Sparsest => candidates.min_by_key(|&i| (rows[i].len(), i)),
        };
        let Some(r) = r else { continue };

        is_pivot_row[r] = true;
        if !opts.reduce_above {
            for (cc, _) in &rows[r] {
                col_rows[*cc as usize].remove(&r);
            }
        }

        let pos = rows[r]
            .binary_search_by_key(&(c as u32), |(cc, _)| *cc)
            .expect("pivot column present in pivot row");
        let value = rows[r][pos].1.clone();
        let inv = field.inv(&value);
        for (_, v) in rows[r].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let prow = std::mem::take(&mut rows[r]);

        let targets: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != r).collect();
        for i in targets {
            let old = std::mem::take(&mut rows[i]);
            rows[i] = axpy_row(field, old, &prow, c as u32, i, &mut col_rows);
        }
        rows[r] = prow;
        pivots.push(Pivot {
            row: r,
            col: c,
            value,
        });
        if let Some(cb) = opts.progress.as_mut() {
            cb(pivots.len(), max_rank);
        }
    }
    pivots
}

/// `target - target[c] * prow`, keeping the column index in sync.
fn axpy_row<F: ElimField>(
    field: &F,
    target: SparseRow<F::Elem>,
    prow: &SparseRow<F::Elem>,
    c: u32,
    row_id: usize,
    col_rows: &mut [BTreeSet<usize>],
) -> SparseRow<F::Elem> {
    let pos = target
        .binary_search_by_key(&c, |(cc, _)| *cc)
        .expect("target row has the pivot column");
    let f = target[pos].1.clone();
    let mut out = Vec::with_capacity(target.len() + prow.len());
    let mut t = target.into_iter().peekable();
    let mut p = prow.iter().peekable();
    loop {
        match (t.peek(), p.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(t.next().unwrap()),
            (None, Some(_)) => {
                let (pc, pv) = p.next().unwrap();
                let v = field.neg(&field.mul(&f, pv));
                if !field.is_zero(&v) {
                    col_rows[*pc as usize].insert(row_id);
                    out.push((*pc, v));
                }
            }
            (Some((tc, _)), Some((pc, _))) => {
                if tc < pc {
                    out.push(t.next().unwrap());
                } else if pc < tc {
                    let (pc, pv) = p.next().unwrap();
                    let v = field.neg(&field.mul(&f, pv));
                    if !field.is_zero(&v) {
                        col_rows[*pc as usize].insert(row_id);
                        out.push((*pc, v));
                    }
                } else {
                    let (tc, tv) = t.next().unwrap();
                    let (_, pv) = p.next().unwrap();
                    // the pivot column cancels by construction
                    let v = if tc == c {
                        None
                    } else {
                        Some(field.sub_mul(&tv, &f, pv)).filter(|v| !field.is_zero(v))
                    };
                    match v {
                        Some(v) => out.push((tc, v)),
                        None => {
                            col_rows[tc as usize].remove(&row_id);
                        }
                    }
                }
            }
        }
    }
    out
}
