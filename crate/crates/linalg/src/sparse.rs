//! Sparse integer vectors and column-major sparse integer matrices.

use std::collections::BTreeMap;
use std::fmt;

use crate::Integer;

/// A sparse integer vector: entries sorted by index, no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Integer)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Integer)>>(pairs: I) -> Self {
        let mut map: BTreeMap<usize, Integer> = BTreeMap::new();
        for (i, v) in pairs {
            *map.entry(i).or_default() += &v;
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Wraps already sorted, zero-free entries.
    pub fn from_sorted(entries: Vec<(usize, Integer)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Integer]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn unit(index: usize) -> Self {
        SparseVec {
            entries: vec![(index, Integer::ONE)],
        }
    }

    pub fn entries(&self) -> &[(usize, Integer)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Integer)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Integer {
        match self.entries.binary_search_by_key(&index, |e| e.0) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Integer::ZERO,
        }
    }

    pub fn leading(&self) -> Option<&(usize, Integer)> {
        self.entries.first()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Integer)> {
        self.entries.iter()
    }

    /// Returns `self + k * other`.
    pub fn add_scaled(&self, k: &Integer, other: &SparseVec) -> SparseVec {
        SparseVec {
            entries: merge_scaled(&self.entries, k, &other.entries),
        }
    }

    pub fn scale(&self, k: &Integer) -> SparseVec {
        if k.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * k)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        self.scale(&Integer::from(-1))
    }

    pub fn to_dense(&self, len: usize) -> Vec<Integer> {
        let mut out = vec![Integer::ZERO; len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn dot(&self, other: &SparseVec) -> Integer {
        let (mut a, mut b) = (0, 0);
        let mut acc = Integer::ZERO;
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, va) = &self.entries[a];
            let (ib, vb) = &other.entries[b];
            match ia.cmp(ib) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc.add_mul(va, vb);
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    /// Sum of absolute values of the entries.
    pub fn norm1(&self) -> Integer {
        let mut acc = Integer::ZERO;
        for (_, v) in &self.entries {
            acc += &v.abs();
        }
        acc
    }
}

/// Merges `a + k * b` for sorted sparse entry lists.
pub(crate) fn merge_scaled(
    a: &[(usize, Integer)],
    k: &Integer,
    b: &[(usize, Integer)],
) -> Vec<(usize, Integer)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = k * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            v.add_mul(k, &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A column-major sparse integer matrix with no stored zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseIntMatrix {
            rows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    /// # Panics
    /// Panics if a column has an entry at or beyond `rows`.
    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        for c in &cols {
            if let Some((i, _)) = c.entries().last() {
                assert!(*i < rows, "column entry {i} out of range for {rows} rows");
            }
        }
        SparseIntMatrix { rows, cols }
    }

    /// Builds a matrix from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(rows: usize, ncols: usize, triplets: &[(usize, usize, Integer)]) -> Self {
        let mut per_col: Vec<Vec<(usize, Integer)>> = vec![Vec::new(); ncols];
        for (r, c, v) in triplets {
            assert!(*r < rows && *c < ncols, "triplet out of range");
            per_col[*c].push((*r, v.clone()));
        }
        SparseIntMatrix {
            rows,
            cols: per_col.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<Integer>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut trip = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    trip.push((i, j, v.clone()));
                }
            }
        }
        SparseIntMatrix::from_triplets(nrows, ncols, &trip)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Integer>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Integer::from(v)).collect())
            .collect();
        SparseIntMatrix::from_dense(&dense)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.cols
    }

    pub fn push_column(&mut self, col: SparseVec) {
        if let Some((i, _)) = col.entries().last() {
            assert!(*i < self.rows, "column entry out of range");
        }
        self.cols.push(col);
    }

    pub fn get(&self, i: usize, j: usize) -> Integer {
        self.cols[j].get(i)
    }

    pub fn to_dense(&self) -> Vec<Vec<Integer>> {
        let mut out = vec![vec![Integer::ZERO; self.ncols()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut per_row: Vec<Vec<(usize, Integer)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                per_row[*i].push((j, v.clone()));
            }
        }
        SparseIntMatrix {
            rows: self.ncols(),
            cols: per_row.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn mul_vec(&self, x: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Integer> = BTreeMap::new();
        for (j, xv) in x.iter() {
            for (i, v) in self.cols[*j].iter() {
                acc.entry(*i).or_default().add_mul(v, xv);
            }
        }
        SparseVec::from_sorted(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.ncols(), other.nrows(), "dimension mismatch in product");
        SparseIntMatrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.mul_vec(c)).collect(),
        }
    }

    /// Returns the submatrix formed by the given rows (in the given order).
    pub fn select_rows(&self, rows: &[usize]) -> SparseIntMatrix {
        let mut pos = vec![usize::MAX; self.rows];
        for (k, r) in rows.iter().enumerate() {
            pos[*r] = k;
        }
        let cols = self
            .cols
            .iter()
            .map(|c| {
                SparseVec::from_pairs(
                    c.iter()
                        .filter(|(i, _)| pos[*i] != usize::MAX)
                        .map(|(i, v)| (pos[*i], v.clone())),
                )
            })
            .collect();
        SparseIntMatrix {
            rows: rows.len(),
            cols,
        }
    }

    /// Stacks `self` above `other` (same column count).
    pub fn vstack(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(
            self.ncols(),
            other.ncols(),
            "column count mismatch in vstack"
        );
        let off = self.rows;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut e = a.entries().to_vec();
                e.extend(b.iter().map(|(i, v)| (i + off, v.clone())));
                SparseVec::from_sorted(e)
            })
            .collect();
        SparseIntMatrix {
            rows: self.rows + other.rows,
            cols,
        }
    }
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "SparseIntMatrix {}x{} ({} nnz)",
            self.rows,
            self.ncols(),
            self.nnz()
        )?;
        if self.rows * self.ncols() <= 400 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
                writeln!(f, "  [{}]", cells.join(" "))?;
            }
        }
        Ok(())
    }
}
