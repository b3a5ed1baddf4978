//! Smith normal form of sparse integer matrices.
//!
//! The decomposition runs in two phases. First, entries equal to `±1` are
//! eliminated sparsely: the pivot column is the active column with the fewest
//! nonzeros that contains a unit, and within it the unit whose row is shortest
//! (lowest row on ties). Eliminating a unit only ever contributes an invariant
//! factor of 1, so this phase shrinks the problem without affecting the result.
//! The residual block that has no units left is then reduced densely with
//! minimal-absolute-value pivoting.
//!
//! Transforms are kept in factored form. `U` is a sequence of eta row
//! operations followed by a dense block; `V`, when requested, is a sequence of
//! elementary column operations followed by a dense block.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::dense::{dense_snf, echelon_basis};
use crate::error::{LinalgError, Result};
use crate::sparse::{SparseIntMatrix, SparseVec};
use crate::Integer;

/// Resource caps for a decomposition.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Maximum number of rows (the ambient dimension).
    pub max_rows: usize,
    /// Maximum number of stored nonzeros during elimination.
    pub max_nonzeros: usize,
    /// Maximum number of entries in the dense residual block.
    pub max_dense_entries: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rows: 50_000,
            max_nonzeros: 60_000_000,
            max_dense_entries: 16_000_000,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SnfOptions {
    /// Record the column transform `V` (needed for solving and kernels).
    pub track_v: bool,
    pub limits: Limits,
}

impl SnfOptions {
    pub fn with_v() -> Self {
        SnfOptions {
            track_v: true,
            limits: Limits::default(),
        }
    }

    pub fn without_v() -> Self {
        SnfOptions {
            track_v: false,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug)]
struct Eta {
    row: usize,
    sign: i8,
    col: Vec<(usize, Integer)>,
}

/// The row transform `U` of a decomposition, in factored form.
///
/// Coordinates of `U * e` are laid out as: one coordinate per unit pivot,
/// then the residual rows, then rows that never carried an entry.
#[derive(Clone, Debug)]
pub struct RowTransform {
    n: usize,
    etas: Vec<Eta>,
    eta_of_row: Vec<u32>,
    res_rows: Vec<usize>,
    res_u: Vec<Vec<Integer>>,
    res_u_inv: Vec<Vec<Integer>>,
    zero_rows: Vec<usize>,
}

impl RowTransform {
    pub fn dim(&self) -> usize {
        self.n
    }

    fn new(
        n: usize,
        etas: Vec<Eta>,
        res_rows: Vec<usize>,
        res_u: Vec<Vec<Integer>>,
        res_u_inv: Vec<Vec<Integer>>,
        zero_rows: Vec<usize>,
    ) -> Self {
        let mut eta_of_row = vec![u32::MAX; n];
        for (i, eta) in etas.iter().enumerate() {
            eta_of_row[eta.row] = i as u32;
        }
        RowTransform {
            n,
            etas,
            eta_of_row,
            res_rows,
            res_u,
            res_u_inv,
            zero_rows,
        }
    }

    /// Runs the eta operations on `e`, visiting only the pivots it reaches.
    /// Each eta column is zero on the rows of earlier etas, so pivots are
    /// reached in increasing order.
    fn reduce(&self, e: &SparseVec) -> Vec<Integer> {
        let mut w = e.to_dense(self.n);
        let mut queued = vec![false; self.etas.len()];
        let mut heap = BinaryHeap::new();
        for (r, _) in e.iter() {
            let p = self.eta_of_row[*r];
            if p != u32::MAX && !queued[p as usize] {
                queued[p as usize] = true;
                heap.push(Reverse(p));
            }
        }
        while let Some(Reverse(p)) = heap.pop() {
            let eta = &self.etas[p as usize];
            let x = w[eta.row].clone();
            if x.is_zero() {
                continue;
            }
            let ux = if eta.sign > 0 { x } else { -x };
            for (y, val) in &eta.col {
                w[*y].sub_mul(val, &ux);
                let q = self.eta_of_row[*y];
                if q != u32::MAX && !queued[q as usize] {
                    queued[q as usize] = true;
                    heap.push(Reverse(q));
                }
            }
        }
        w
    }

    /// Computes `U * e`.
    pub fn apply(&self, e: &SparseVec) -> Vec<Integer> {
        let w = self.reduce(e);
        let mut out = Vec::with_capacity(self.n);
        for eta in &self.etas {
            let x = &w[eta.row];
            out.push(if eta.sign > 0 { x.clone() } else { -x });
        }
        let res_zero = self.res_rows.iter().all(|r| w[*r].is_zero());
        for row in &self.res_u {
            let mut acc = Integer::ZERO;
            if !res_zero {
                for (coef, r) in row.iter().zip(&self.res_rows) {
                    if !coef.is_zero() && !w[*r].is_zero() {
                        acc.add_mul(coef, &w[*r]);
                    }
                }
            }
            out.push(acc);
        }
        for r in &self.zero_rows {
            out.push(w[*r].clone());
        }
        out
    }

    /// Computes `U^{-1} * y`.
    pub fn apply_inverse(&self, y: &[Integer]) -> SparseVec {
        assert_eq!(y.len(), self.n, "dimension mismatch");
        let k = self.etas.len();
        let mut w = vec![Integer::ZERO; self.n];
        for (i, eta) in self.etas.iter().enumerate() {
            w[eta.row] = if eta.sign > 0 { y[i].clone() } else { -&y[i] };
        }
        for (j, r) in self.res_rows.iter().enumerate() {
            let mut acc = Integer::ZERO;
            for (t, coef) in self.res_u_inv[j].iter().enumerate() {
                if !coef.is_zero() {
                    acc.add_mul(coef, &y[k + t]);
                }
            }
            w[*r] = acc;
        }
        let off = k + self.res_rows.len();
        for (t, r) in self.zero_rows.iter().enumerate() {
            w[*r] = y[off + t].clone();
        }
        for eta in self.etas.iter().rev() {
            let x = w[eta.row].clone();
            if x.is_zero() {
                continue;
            }
            let ux = if eta.sign > 0 { x } else { -x };
            for (r, val) in &eta.col {
                w[*r].add_mul(val, &ux);
            }
        }
        SparseVec::from_dense(&w)
    }

    /// Column `i` of `U^{-1}`.
    pub fn inverse_column(&self, i: usize) -> SparseVec {
        let mut y = vec![Integer::ZERO; self.n];
        y[i] = Integer::ONE;
        self.apply_inverse(&y)
    }

    /// Materializes `U` as an explicit matrix.
    pub fn to_matrix(&self) -> SparseIntMatrix {
        let cols = (0..self.n)
            .map(|j| SparseVec::from_dense(&self.apply(&SparseVec::unit(j))))
            .collect();
        SparseIntMatrix::from_columns(self.n, cols)
    }

    /// Materializes `U^{-1}` as an explicit matrix.
    pub fn inverse_matrix(&self) -> SparseIntMatrix {
        let cols = (0..self.n).map(|i| self.inverse_column(i)).collect();
        SparseIntMatrix::from_columns(self.n, cols)
    }
}

/// The column transform `V` of a decomposition, in factored form.
#[derive(Clone, Debug)]
pub struct ColTransform {
    m: usize,
    // (target, pivot, q): column target -= q * column pivot
    ops: Vec<(u32, u32, Integer)>,
    pivot_cols: Vec<usize>,
    res_cols: Vec<usize>,
    res_rank: usize,
    res_v: Vec<Vec<Integer>>,
    res_v_inv: Vec<Vec<Integer>>,
    zero_cols: Vec<usize>,
}

impl ColTransform {
    pub fn dim(&self) -> usize {
        self.m
    }

    fn embed(&self, y: &[Integer]) -> Vec<Integer> {
        let k = self.pivot_cols.len();
        let mut z = vec![Integer::ZERO; self.m];
        for (i, c) in self.pivot_cols.iter().enumerate() {
            z[*c] = y[i].clone();
        }
        for (j, c) in self.res_cols.iter().enumerate() {
            let mut acc = Integer::ZERO;
            for (t, coef) in self.res_v[j].iter().enumerate() {
                if !coef.is_zero() {
                    acc.add_mul(coef, &y[k + t]);
                }
            }
            z[*c] = acc;
        }
        let off = k + self.res_cols.len();
        for (t, c) in self.zero_cols.iter().enumerate() {
            z[*c] = y[off + t].clone();
        }
        z
    }

    /// Computes `V * y`.
    pub fn apply(&self, y: &[Integer]) -> SparseVec {
        assert_eq!(y.len(), self.m, "dimension mismatch");
        let mut z = self.embed(y);
        for (x, c, q) in self.ops.iter().rev() {
            let zx = z[*x as usize].clone();
            if !zx.is_zero() {
                z[*c as usize].sub_mul(q, &zx);
            }
        }
        SparseVec::from_dense(&z)
    }

    /// Computes `V * e_j` for many indices `j` in one pass over the operations.
    pub fn columns(&self, indices: &[usize]) -> Vec<SparseVec> {
        // rows[c] holds, for each requested vector, its entry at original column c.
        let mut rows: Vec<Vec<(usize, Integer)>> = vec![Vec::new(); self.m];
        let k = self.pivot_cols.len();
        let off = k + self.res_cols.len();
        for (slot, &j) in indices.iter().enumerate() {
            if j < k {
                rows[self.pivot_cols[j]].push((slot, Integer::ONE));
            } else if j < off {
                for (r, c) in self.res_cols.iter().enumerate() {
                    let v = &self.res_v[r][j - k];
                    if !v.is_zero() {
                        rows[*c].push((slot, v.clone()));
                    }
                }
            } else {
                rows[self.zero_cols[j - off]].push((slot, Integer::ONE));
            }
        }
        for (x, c, q) in self.ops.iter().rev() {
            let (x, c) = (*x as usize, *c as usize);
            if rows[x].is_empty() {
                continue;
            }
            let merged = crate::sparse::merge_scaled(&rows[c], &-q, &rows[x]);
            rows[c] = merged;
        }
        let mut out: Vec<Vec<(usize, Integer)>> = vec![Vec::new(); indices.len()];
        for (c, row) in rows.into_iter().enumerate() {
            for (slot, v) in row {
                out[slot].push((c, v));
            }
        }
        out.into_iter().map(SparseVec::from_sorted).collect()
    }

    /// Computes `V^{-1} * w`.
    pub fn apply_inverse(&self, w: &SparseVec) -> Vec<Integer> {
        let mut z = w.to_dense(self.m);
        for (x, c, q) in &self.ops {
            let zx = z[*x as usize].clone();
            if !zx.is_zero() {
                z[*c as usize].add_mul(q, &zx);
            }
        }
        let mut y = Vec::with_capacity(self.m);
        for c in &self.pivot_cols {
            y.push(z[*c].clone());
        }
        for row in &self.res_v_inv {
            let mut acc = Integer::ZERO;
            for (coef, c) in row.iter().zip(&self.res_cols) {
                if !coef.is_zero() {
                    acc.add_mul(coef, &z[*c]);
                }
            }
            y.push(acc);
        }
        for c in &self.zero_cols {
            y.push(z[*c].clone());
        }
        y
    }

    /// Coordinates of a kernel vector `w` of the decomposed matrix with respect
    /// to the kernel basis `V * e_j`, `j >= rank`. Only the non-pivot entries of
    /// `w` are read, so the caller must ensure `w` lies in the kernel.
    pub fn kernel_coordinates(&self, w: &SparseVec) -> Vec<Integer> {
        let mut y = Vec::new();
        for row in &self.res_v_inv[self.res_rank..] {
            let mut acc = Integer::ZERO;
            for (coef, c) in row.iter().zip(&self.res_cols) {
                if !coef.is_zero() {
                    acc.add_mul(coef, &w.get(*c));
                }
            }
            y.push(acc);
        }
        for c in &self.zero_cols {
            y.push(w.get(*c));
        }
        y
    }

    pub fn to_matrix(&self) -> SparseIntMatrix {
        let idx: Vec<usize> = (0..self.m).collect();
        SparseIntMatrix::from_columns(self.m, self.columns(&idx))
    }
}

/// Result of a Smith normal form computation: `U * M * V = D`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    rows: usize,
    cols: usize,
    invariants: Vec<Integer>,
    row_transform: RowTransform,
    col_transform: Option<ColTransform>,
}

impl SnfResult {
    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// The nonzero diagonal entries `λ_1 | λ_2 | ... | λ_rank`, all positive.
    pub fn invariants(&self) -> &[Integer] {
        &self.invariants
    }

    /// The full diagonal of `D`, padded with zeros to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<Integer> {
        let mut d = self.invariants.clone();
        d.resize(self.rows.min(self.cols), Integer::ZERO);
        d
    }

    /// The invariant factors different from 1, i.e. the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<Integer> {
        self.invariants
            .iter()
            .filter(|x| !x.is_one())
            .cloned()
            .collect()
    }

    /// Rank of the free part of the cokernel `Z^rows / im M`.
    pub fn cokernel_free_rank(&self) -> usize {
        self.rows - self.rank()
    }

    pub fn row_transform(&self) -> &RowTransform {
        &self.row_transform
    }

    pub fn col_transform(&self) -> Option<&ColTransform> {
        self.col_transform.as_ref()
    }

    pub fn u_matrix(&self) -> SparseIntMatrix {
        self.row_transform.to_matrix()
    }

    pub fn v_matrix(&self) -> Result<SparseIntMatrix> {
        self.col_transform
            .as_ref()
            .map(ColTransform::to_matrix)
            .ok_or(LinalgError::MissingColumnTransform)
    }

    pub fn d_matrix(&self) -> SparseIntMatrix {
        let trip: Vec<_> = self
            .invariants
            .iter()
            .enumerate()
            .map(|(i, v)| (i, i, v.clone()))
            .collect();
        SparseIntMatrix::from_triplets(self.rows, self.cols, &trip)
    }

    /// Whether `e` lies in the column lattice of the decomposed matrix.
    pub fn contains(&self, e: &SparseVec) -> bool {
        let rt = &self.row_transform;
        let w = rt.reduce(e);
        if rt.zero_rows.iter().any(|r| !w[*r].is_zero()) {
            return false;
        }
        if rt.res_rows.iter().all(|r| w[*r].is_zero()) {
            return true;
        }
        let k = rt.etas.len();
        for (t, row) in rt.res_u.iter().enumerate() {
            let mut acc = Integer::ZERO;
            for (coef, r) in row.iter().zip(&rt.res_rows) {
                if !coef.is_zero() && !w[*r].is_zero() {
                    acc.add_mul(coef, &w[*r]);
                }
            }
            let ok = match self.invariants.get(k + t) {
                Some(l) => l.divides(&acc),
                None => acc.is_zero(),
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// A basis of the column lattice: `λ_i * U^{-1} e_i` for `i < rank`.
    pub fn lattice_basis(&self) -> Vec<SparseVec> {
        let rt = &self.row_transform;
        let mut out: Vec<SparseVec> = rt
            .etas
            .iter()
            .map(|eta| {
                let mut col = eta.col.clone();
                col.push((eta.row, Integer::from(eta.sign as i64)));
                SparseVec::from_pairs(col)
            })
            .collect();
        for i in rt.etas.len()..self.rank() {
            out.push(rt.inverse_column(i).scale(&self.invariants[i]));
        }
        out
    }

    /// Checks `U * M * V == D` by explicit multiplication.
    pub fn verify(&self, m: &SparseIntMatrix) -> Result<bool> {
        let v = self.v_matrix()?;
        Ok(self.u_matrix().mul(m).mul(&v) == self.d_matrix())
    }
}

/// Smith normal form with the column transform tracked.
pub fn snf(m: &SparseIntMatrix) -> Result<SnfResult> {
    snf_with(m, &SnfOptions::with_v())
}

struct Elimination {
    nrows: usize,
    cols: Vec<Vec<(usize, Integer)>>,
    col_active: Vec<bool>,
    row_cols: Vec<Vec<u32>>,
    row_count: Vec<u32>,
    row_active: Vec<bool>,
    heap: BinaryHeap<Reverse<(usize, usize)>>,
    nnz: usize,
    etas: Vec<Eta>,
    pivot_cols: Vec<usize>,
    ops: Option<Vec<(u32, u32, Integer)>>,
}

impl Elimination {
    fn new(m: &SparseIntMatrix, track_v: bool) -> Self {
        let nrows = m.nrows();
        let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); nrows];
        let mut row_count = vec![0u32; nrows];
        let mut cols = Vec::with_capacity(m.ncols());
        let mut heap = BinaryHeap::new();
        let mut nnz = 0;
        for (j, c) in m.columns().iter().enumerate() {
            for (i, _) in c.iter() {
                row_cols[*i].push(j as u32);
                row_count[*i] += 1;
            }
            nnz += c.nnz();
            if !c.is_zero() {
                heap.push(Reverse((c.nnz(), j)));
            }
            cols.push(c.entries().to_vec());
        }
        let col_active = cols.iter().map(|c| !c.is_empty()).collect();
        Elimination {
            nrows,
            cols,
            col_active,
            row_cols,
            row_count,
            row_active: vec![true; nrows],
            heap,
            nnz,
            etas: Vec::new(),
            pivot_cols: Vec::new(),
            ops: track_v.then(Vec::new),
        }
    }

    fn select_pivot(&mut self) -> Option<(usize, usize)> {
        while let Some(Reverse((len, c))) = self.heap.pop() {
            if !self.col_active[c] || self.cols[c].len() != len {
                continue;
            }
            let mut best: Option<(u32, usize)> = None;
            for (r, v) in &self.cols[c] {
                if v.is_unit() {
                    let key = (self.row_count[*r], *r);
                    if best.map_or(true, |b| key < b) {
                        best = Some(key);
                    }
                }
            }
            if let Some((_, r)) = best {
                return Some((r, c));
            }
        }
        None
    }

    fn eliminate(&mut self, r: usize, c: usize, limits: &Limits) -> Result<()> {
        let v = std::mem::take(&mut self.cols[c]);
        self.col_active[c] = false;
        self.row_active[r] = false;
        let pos = v
            .binary_search_by_key(&r, |e| e.0)
            .expect("pivot entry present");
        let sign: i8 = if v[pos].1.is_one() { 1 } else { -1 };
        let u = Integer::from(sign as i64);
        for (y, _) in &v {
            self.row_count[*y] -= 1;
        }
        self.nnz -= v.len();
        let targets = std::mem::take(&mut self.row_cols[r]);
        for x in targets {
            let x = x as usize;
            if x == c || !self.col_active[x] {
                continue;
            }
            let old = &self.cols[x];
            let Ok(p) = old.binary_search_by_key(&r, |e| e.0) else {
                continue;
            };
            let q = &old[p].1 * &u;
            let nq = -&q;
            let new = merge_tracking(
                old,
                &nq,
                &v,
                x as u32,
                &mut self.row_cols,
                &mut self.row_count,
            );
            self.nnz = self.nnz + new.len() - old.len();
            if let Some(ops) = &mut self.ops {
                ops.push((x as u32, c as u32, q));
            }
            if new.is_empty() {
                self.col_active[x] = false;
            } else {
                self.heap.push(Reverse((new.len(), x)));
            }
            self.cols[x] = new;
            if self.nnz > limits.max_nonzeros {
                return Err(LinalgError::ResourceLimit {
                    what: "nonzeros during elimination",
                    actual: self.nnz,
                    limit: limits.max_nonzeros,
                });
            }
        }
        self.row_count[r] = 0;
        let col: Vec<(usize, Integer)> = v.into_iter().filter(|(y, _)| *y != r).collect();
        self.etas.push(Eta { row: r, sign, col });
        self.pivot_cols.push(c);
        Ok(())
    }
}

/// Merges `old + k * v`, updating row membership for filled and cancelled entries.
fn merge_tracking(
    old: &[(usize, Integer)],
    k: &Integer,
    v: &[(usize, Integer)],
    col: u32,
    row_cols: &mut [Vec<u32>],
    row_count: &mut [u32],
) -> Vec<(usize, Integer)> {
    let mut out = Vec::with_capacity(old.len() + v.len());
    let (mut i, mut j) = (0, 0);
    while i < old.len() || j < v.len() {
        if j >= v.len() || (i < old.len() && old[i].0 < v[j].0) {
            out.push(old[i].clone());
            i += 1;
        } else if i >= old.len() || v[j].0 < old[i].0 {
            let val = k * &v[j].1;
            let row = v[j].0;
            row_cols[row].push(col);
            row_count[row] += 1;
            out.push((row, val));
            j += 1;
        } else {
            let mut val = old[i].1.clone();
            val.add_mul(k, &v[j].1);
            if val.is_zero() {
                row_count[old[i].0] -= 1;
            } else {
                out.push((old[i].0, val));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Smith normal form of the lattice spanned by the columns of `m`, for
/// matrices with many more columns than their rank. Columns are taken in
/// batches; each batch drops the columns already in the lattice built so far
/// and is decomposed together with a basis of that lattice. The result has no
/// column transform, and its column count is that of the last decomposed
/// matrix rather than of `m`.
pub fn snf_of_span(m: &SparseIntMatrix, batch: usize, limits: &Limits) -> Result<SnfResult> {
    let opts = SnfOptions {
        track_v: false,
        limits: limits.clone(),
    };
    let batch = batch.max(1);
    let cols = m.columns();
    let mut current: Option<SnfResult> = None;
    let mut start = 0;
    while start < cols.len() || current.is_none() {
        let end = (start + batch).min(cols.len());
        let fresh: Vec<SparseVec> = cols[start..end]
            .iter()
            .filter(|c| !c.is_zero() && current.as_ref().map_or(true, |r| !r.contains(c)))
            .cloned()
            .collect();
        start = end;
        if fresh.is_empty() && current.is_some() {
            continue;
        }
        let mut input = current
            .as_ref()
            .map(SnfResult::lattice_basis)
            .unwrap_or_default();
        input.extend(fresh);
        current = Some(snf_with(
            &SparseIntMatrix::from_columns(m.nrows(), input),
            &opts,
        )?);
    }
    Ok(current.expect("at least one decomposition"))
}

/// Smith normal form with explicit options.
pub fn snf_with(m: &SparseIntMatrix, opts: &SnfOptions) -> Result<SnfResult> {
    let limits = &opts.limits;
    if m.nrows() > limits.max_rows {
        return Err(LinalgError::ResourceLimit {
            what: "rows",
            actual: m.nrows(),
            limit: limits.max_rows,
        });
    }
    if m.nnz() > limits.max_nonzeros {
        return Err(LinalgError::ResourceLimit {
            what: "input nonzeros",
            actual: m.nnz(),
            limit: limits.max_nonzeros,
        });
    }
    let mut el = Elimination::new(m, opts.track_v);
    while let Some((r, c)) = el.select_pivot() {
        el.eliminate(r, c, limits)?;
    }

    let nrows = el.nrows;
    let res_cols: Vec<usize> = (0..m.ncols()).filter(|&j| el.col_active[j]).collect();
    let res_rows: Vec<usize> = (0..nrows)
        .filter(|&i| el.row_active[i] && el.row_count[i] > 0)
        .collect();
    let zero_rows: Vec<usize> = (0..nrows)
        .filter(|&i| el.row_active[i] && el.row_count[i] == 0)
        .collect();
    let mut row_pos = vec![usize::MAX; nrows];
    for (k, r) in res_rows.iter().enumerate() {
        row_pos[*r] = k;
    }
    let dense_cols: Vec<Vec<Integer>> = res_cols
        .iter()
        .map(|&j| {
            let mut d = vec![Integer::ZERO; res_rows.len()];
            for (i, v) in &el.cols[j] {
                d[row_pos[*i]] = v.clone();
            }
            d
        })
        .collect();
    let mres = res_rows.len();

    let (res_diag, res_u, res_u_inv, res_v, res_v_inv, res_rank) = if opts.track_v {
        let entries = mres * res_cols.len() + res_cols.len() * res_cols.len();
        if entries > limits.max_dense_entries {
            return Err(LinalgError::ResourceLimit {
                what: "dense residual entries",
                actual: entries,
                limit: limits.max_dense_entries,
            });
        }
        let a = transpose_dense(&dense_cols, mres);
        let d = dense_snf(a, res_cols.len(), true);
        let diag: Vec<Integer> = (0..d.rank).map(|i| d.a[i][i].clone()).collect();
        (diag, d.u, d.u_inv, d.v.unwrap(), d.v_inv.unwrap(), d.rank)
    } else {
        if mres * mres > limits.max_dense_entries {
            return Err(LinalgError::ResourceLimit {
                what: "dense residual entries",
                actual: mres * mres,
                limit: limits.max_dense_entries,
            });
        }
        let basis = echelon_basis(dense_cols, mres);
        let width = basis.len();
        let a = transpose_dense(&basis, mres);
        let d = dense_snf(a, width, false);
        let diag: Vec<Integer> = (0..d.rank).map(|i| d.a[i][i].clone()).collect();
        (diag, d.u, d.u_inv, Vec::new(), Vec::new(), d.rank)
    };

    let mut invariants = vec![Integer::ONE; el.etas.len()];
    invariants.extend(res_diag);

    let col_transform = el.ops.take().map(|ops| {
        let mut is_pivot = vec![false; m.ncols()];
        for &c in &el.pivot_cols {
            is_pivot[c] = true;
        }
        let zero_cols: Vec<usize> = (0..m.ncols())
            .filter(|&j| !el.col_active[j] && !is_pivot[j])
            .collect();
        ColTransform {
            m: m.ncols(),
            ops,
            pivot_cols: el.pivot_cols.clone(),
            res_cols: res_cols.clone(),
            res_rank,
            res_v,
            res_v_inv,
            zero_cols,
        }
    });

    Ok(SnfResult {
        rows: nrows,
        cols: m.ncols(),
        invariants,
        row_transform: RowTransform::new(nrows, el.etas, res_rows, res_u, res_u_inv, zero_rows),
        col_transform,
    })
}

fn transpose_dense(cols: &[Vec<Integer>], nrows: usize) -> Vec<Vec<Integer>> {
    let mut a = vec![vec![Integer::ZERO; cols.len()]; nrows];
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            if !v.is_zero() {
                a[i][j] = v.clone();
            }
        }
    }
    a
}
