//! Lattice operations built on the Smith normal form.

use crate::error::{LinalgError, Result};
use crate::snf::{snf, snf_with, SnfOptions};
use crate::sparse::{SparseIntMatrix, SparseVec};
use crate::Integer;

/// Finds an integer `x` with `M x = b`, or `None` if no integer solution exists.
pub fn solve_integer(m: &SparseIntMatrix, b: &SparseVec) -> Result<Option<SparseVec>> {
    if let Some((i, _)) = b.entries().last() {
        if *i >= m.nrows() {
            return Err(LinalgError::DimensionMismatch(format!(
                "right-hand side index {i} exceeds {} rows",
                m.nrows()
            )));
        }
    }
    let res = snf(m)?;
    Ok(solve_with(&res, b))
}

/// Solves `M x = b` using an existing decomposition of `M` (which must track `V`).
pub fn solve_with(res: &crate::SnfResult, b: &SparseVec) -> Option<SparseVec> {
    let v = res
        .col_transform()
        .expect("column transform required for solving");
    let c = res.row_transform().apply(b);
    let lam = res.invariants();
    let mut y = vec![Integer::ZERO; res.ncols()];
    for (i, ci) in c.iter().enumerate() {
        if i < lam.len() {
            if !lam[i].divides(ci) {
                return None;
            }
            y[i] = ci.div_exact(&lam[i]);
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(v.apply(&y))
}

/// A basis of the integer kernel `{x : M x = 0}`, one column per basis vector.
pub fn kernel_basis(m: &SparseIntMatrix) -> Result<SparseIntMatrix> {
    let res = snf(m)?;
    let v = res.col_transform().expect("tracked");
    let idx: Vec<usize> = (res.rank()..m.ncols()).collect();
    Ok(SparseIntMatrix::from_columns(m.ncols(), v.columns(&idx)))
}

/// Invariant factors of `Z^ambient_dim / span(generators)`: the Smith diagonal
/// padded with one `0` per ambient dimension beyond the rank.
pub fn quotient_invariants(
    generators: &SparseIntMatrix,
    ambient_dim: usize,
) -> Result<Vec<Integer>> {
    if generators.nrows() != ambient_dim {
        return Err(LinalgError::DimensionMismatch(format!(
            "generators have {} rows, ambient dimension is {ambient_dim}",
            generators.nrows()
        )));
    }
    let res = snf_with(generators, &SnfOptions::without_v())?;
    let mut out = res.invariants().to_vec();
    out.resize(ambient_dim, Integer::ZERO);
    Ok(out)
}

/// The canonical Hermite basis of the lattice spanned by the columns of `M`.
///
/// Basis vectors are ordered by strictly increasing leading row, leading
/// entries are positive, and every other basis vector's entry in a leading row
/// lies in `[0, pivot)`. Two matrices span the same lattice exactly when their
/// Hermite bases are equal.
pub fn hermite_basis(m: &SparseIntMatrix) -> SparseIntMatrix {
    let n = m.nrows();
    let mut basis: Vec<Option<SparseVec>> = vec![None; n];
    for col in m.columns() {
        let mut w = col.clone();
        loop {
            let Some((l, wl)) = w.leading().cloned() else {
                break;
            };
            match basis[l].take() {
                None => {
                    basis[l] = Some(if wl.is_negative() { w.neg() } else { w });
                    break;
                }
                Some(b) => {
                    let bl = b.leading().expect("nonzero").1.clone();
                    if bl.divides(&wl) {
                        let q = wl.div_exact(&bl);
                        w = w.add_scaled(&-q, &b);
                        basis[l] = Some(b);
                    } else {
                        let (g, x, y) = bl.extended_gcd(&wl);
                        let nb = b.scale(&x).add_scaled(&y, &w);
                        w = w
                            .scale(&bl.div_exact(&g))
                            .add_scaled(&-wl.div_exact(&g), &b);
                        basis[l] = Some(nb);
                    }
                }
            }
        }
    }
    let mut vecs: Vec<SparseVec> = basis.into_iter().flatten().collect();
    for j in 0..vecs.len() {
        let (lj, pj) = vecs[j].leading().cloned().expect("nonzero");
        for i in 0..j {
            let x = vecs[i].get(lj);
            if x.is_zero() {
                continue;
            }
            let (q, _) = x.div_rem_floor(&pj);
            if !q.is_zero() {
                vecs[i] = vecs[i].add_scaled(&-q, &vecs[j]);
            }
        }
    }
    SparseIntMatrix::from_columns(n, vecs)
}

/// True when the column spans of `a` and `b` are the same lattice.
pub fn same_lattice(a: &SparseIntMatrix, b: &SparseIntMatrix) -> bool {
    a.nrows() == b.nrows() && hermite_basis(a) == hermite_basis(b)
}

/// Determinant of a square matrix by fraction-free (Bareiss) elimination.
pub fn determinant(m: &SparseIntMatrix) -> Integer {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant of a non-square matrix");
    if n == 0 {
        return Integer::ONE;
    }
    let mut a = m.to_dense();
    let mut sign = 1i64;
    let mut prev = Integer::ONE;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Integer::ZERO;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let mut v = &a[i][j] * &a[k][k];
                v.sub_mul(&a[i][k], &a[k][j]);
                a[i][j] = v.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}
