//! Exact sparse linear algebra over arbitrary-precision rationals.
//!
//! Scalars are [`Rational`] (reduced fractions with positive denominator,
//! arbitrary-precision integers). Matrices are immutable after construction;
//! `rank` works on a private copy, so shared references can cross worker
//! threads freely. No floating point anywhere.

use num::{BigInt, BigRational, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Exact scalar type: reduced fraction, positive denominator, zero is 0/1.
/// Those invariants are maintained by every arithmetic operation.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn ratio_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"` or `"p"` into a reduced [`Rational`].
///
/// Rejects a zero denominator and anything that is not an integer or a
/// fraction of integers.
pub fn parse_rational(text: &str) -> Result<Rational, MatrixError> {
    let bad = || MatrixError::BadRational {
        text: text.to_string(),
    };
    let s = text.trim();
    match s.split_once('/') {
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
        Some((p, q)) => {
            let numer = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let denom = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Render a [`Rational`] in the same `"p/q"` / `"p"` form that
/// [`parse_rational`] accepts.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("dimension mismatch: cannot compose {left_rows}x{left_cols} with {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("entry at ({row}, {col}) lies outside a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("invalid rational literal {text:?} (expected \"p\" or \"p/q\" with q != 0)")]
    BadRational { text: String },
}

/// Immutable sparse matrix over [`Rational`], stored row-major with each row
/// sorted by column. No explicit zeros are kept, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_data: Vec<Vec<(usize, Rational)>>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}, nnz {})", self.rows, self.cols, self.nnz())?;
        if self.nnz() <= 32 {
            let entries: Vec<String> = self
                .iter()
                .map(|(r, c, v)| format!("({r},{c})={v}"))
                .collect();
            write!(f, " [{}]", entries.join(", "))?;
        }
        Ok(())
    }
}

impl SparseMatrix {
    /// The `rows` x `cols` zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            row_data: vec![Vec::new(); rows],
        }
    }

    /// The `n` x `n` identity.
    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            row_data: (0..n).map(|i| vec![(i, ratio_i64(1))]).collect(),
        }
    }

    /// Build from `(row, col, value)` triplets. Zero values are dropped;
    /// duplicates and out-of-range indices are rejected.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: Vec<(usize, usize, Rational)>,
    ) -> Result<Self, MatrixError> {
        let mut row_data: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(MatrixError::IndexOutOfRange {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            if v.is_zero() {
                continue;
            }
            row_data[r].push((c, v));
        }
        for (r, row) in row_data.iter_mut().enumerate() {
            row.sort_by_key(|&(c, _)| c);
            for w in row.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(MatrixError::DuplicateEntry { row: r, col: w[0].0 });
                }
            }
        }
        Ok(SparseMatrix {
            rows,
            cols,
            row_data,
        })
    }

    /// Build from a dense grid of integers; handy in tests and small setups.
    pub fn from_int_rows(grid: &[Vec<i64>]) -> Self {
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        let mut row_data = Vec::with_capacity(rows);
        for row in grid {
            assert_eq!(row.len(), cols, "ragged dense grid");
            row_data.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(c, &x)| (c, ratio_i64(x)))
                    .collect(),
            );
        }
        SparseMatrix {
            rows,
            cols,
            row_data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.row_data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.row_data.iter().all(Vec::is_empty)
    }

    /// Entry at `(row, col)`, zero when absent. Panics out of range.
    pub fn get(&self, row: usize, col: usize) -> Rational {
        assert!(row < self.rows && col < self.cols, "index out of range");
        match self.row_data[row].binary_search_by_key(&col, |&(c, _)| c) {
            Ok(k) => self.row_data[row][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Sorted nonzero entries of one row.
    pub fn row_entries(&self, row: usize) -> &[(usize, Rational)] {
        &self.row_data[row]
    }

    /// All nonzero entries in (row, col) order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.row_data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    /// Column-major copy of the entries: `result[c]` lists `(row, value)` in
    /// row order. Useful for consumers that assemble by column.
    pub fn columns(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.iter() {
            cols[c].push((r, v.clone()));
        }
        cols
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut row_data: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.iter() {
            row_data[c].push((r, v.clone()));
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            row_data,
        }
    }

    /// Matrix product `self * rhs` (composition of linear maps: `rhs` is
    /// applied first).
    pub fn compose(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut row_data = Vec::with_capacity(self.rows);
        for row in &self.row_data {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &rhs.row_data[*k] {
                    let term = a * b;
                    match acc.entry(*j) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(term);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            *e.get_mut() += term;
                        }
                    }
                }
            }
            row_data.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            row_data,
        })
    }

    /// Rank over the rationals, by exact Gaussian elimination.
    ///
    /// The matrix is first split into connected components of its bipartite
    /// support graph (rank is additive across components, and the block
    /// structure of Koszul differentials of monomial modules makes the blocks
    /// tiny); each component is then eliminated with pivots chosen for
    /// sparsity.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Union-find over row nodes 0..rows and column nodes rows..rows+cols.
        let mut uf = UnionFind::new(self.rows + self.cols);
        for (r, row) in self.row_data.iter().enumerate() {
            for (c, _) in row {
                uf.union(r, self.rows + c);
            }
        }
        let mut comp_rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (r, row) in self.row_data.iter().enumerate() {
            if !row.is_empty() {
                comp_rows.entry(uf.find(r)).or_default().push(r);
            }
        }
        let mut rank = 0;
        for rows in comp_rows.values() {
            // Reindex this component's columns densely, preserving column
            // order so the mapped rows stay sorted for binary search.
            let mut col_map: BTreeMap<usize, usize> = BTreeMap::new();
            for &r in rows {
                for (c, _) in &self.row_data[r] {
                    col_map.insert(*c, 0);
                }
            }
            for (next, slot) in col_map.values_mut().enumerate() {
                *slot = next;
            }
            let local: Vec<Vec<(usize, Rational)>> = rows
                .iter()
                .map(|&r| {
                    self.row_data[r]
                        .iter()
                        .map(|(c, v)| (col_map[c], v.clone()))
                        .collect()
                })
                .collect();
            rank += eliminate(local, col_map.len());
        }
        rank
    }

    /// Dimension of the kernel: `cols - rank`.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

/// Exact elimination counting pivots. Rows are consumed; each is sorted by
/// column with no zeros. Pivot choice: the column with fewest live entries,
/// then the shortest row holding it — a cheap Markowitz-style rule that keeps
/// fill-in low on the incidence-like matrices this crate produces.
fn eliminate(mut rows: Vec<Vec<(usize, Rational)>>, ncols: usize) -> usize {
    let mut col_count = vec![0usize; ncols];
    for row in &rows {
        for (c, _) in row {
            col_count[*c] += 1;
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut rank = 0;
    loop {
        let Some(pivot_col) = (0..ncols)
            .filter(|&c| col_count[c] > 0)
            .min_by_key(|&c| col_count[c])
        else {
            break;
        };
        let mut pivot_row = usize::MAX;
        for (r, row) in rows.iter().enumerate() {
            if alive[r]
                && row.binary_search_by_key(&pivot_col, |&(c, _)| c).is_ok()
                && (pivot_row == usize::MAX || row.len() < rows[pivot_row].len())
            {
                pivot_row = r;
            }
        }
        debug_assert_ne!(pivot_row, usize::MAX);
        let pivot = std::mem::take(&mut rows[pivot_row]);
        alive[pivot_row] = false;
        for (c, _) in &pivot {
            col_count[*c] -= 1;
        }
        let pivot_idx = pivot
            .binary_search_by_key(&pivot_col, |&(c, _)| c)
            .expect("pivot entry vanished");
        let pivot_val = pivot[pivot_idx].1.clone();
        for r in 0..rows.len() {
            if !alive[r] {
                continue;
            }
            let Ok(k) = rows[r].binary_search_by_key(&pivot_col, |&(c, _)| c) else {
                continue;
            };
            let factor = &rows[r][k].1 / &pivot_val;
            let old = std::mem::take(&mut rows[r]);
            for (c, _) in &old {
                col_count[*c] -= 1;
            }
            let new_row = axpy(&old, &pivot, &factor);
            for (c, _) in &new_row {
                col_count[*c] += 1;
            }
            rows[r] = new_row;
        }
        rank += 1;
    }
    rank
}

/// `target - factor * pivot`, merging two sorted sparse rows.
fn axpy(
    target: &[(usize, Rational)],
    pivot: &[(usize, Rational)],
    factor: &Rational,
) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < pivot.len() {
        let ca = target.get(a).map(|&(c, _)| c);
        let cb = pivot.get(b).map(|&(c, _)| c);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = &target[a].1 - &(factor * &pivot[b].1);
                if !v.is_zero() {
                    out.push((x, v));
                }
                a += 1;
                b += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(target[a].clone());
                let _ = x;
                a += 1;
            }
            (Some(_), Some(y)) => {
                out.push((y, -(factor * &pivot[b].1)));
                b += 1;
            }
            (Some(_), None) => {
                out.push(target[a].clone());
                a += 1;
            }
            (None, Some(y)) => {
                out.push((y, -(factor * &pivot[b].1)));
                b += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
