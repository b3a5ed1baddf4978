//! Dense Smith normal form with optional transform tracking. Used on the
//! residual block left after sparse unit-pivot elimination.

use crate::Integer;

pub(crate) type Dense = Vec<Vec<Integer>>;

pub(crate) fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Integer::ONE } else { Integer::ZERO })
                .collect()
        })
        .collect()
}

pub(crate) struct DenseSnf {
    pub a: Dense,
    pub u: Dense,
    pub u_inv: Dense,
    pub v: Option<Dense>,
    pub v_inv: Option<Dense>,
    pub rank: usize,
}

struct Work {
    a: Dense,
    m: usize,
    n: usize,
    u: Dense,
    u_inv: Dense,
    v: Option<Dense>,
    v_inv: Option<Dense>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(i, j);
        }
    }

    /// row_i += k * row_t
    fn add_row(&mut self, i: usize, t: usize, k: &Integer) {
        if k.is_zero() {
            return;
        }
        add_scaled_row(&mut self.a, i, t, k);
        add_scaled_row(&mut self.u, i, t, k);
        let nk = -k;
        for row in &mut self.u_inv {
            let ri = row[i].clone();
            row[t].add_mul(&nk, &ri);
        }
    }

    /// col_j += k * col_t
    fn add_col(&mut self, j: usize, t: usize, k: &Integer) {
        if k.is_zero() {
            return;
        }
        for row in &mut self.a {
            let rt = row[t].clone();
            row[j].add_mul(k, &rt);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                let rt = row[t].clone();
                row[j].add_mul(k, &rt);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            add_scaled_row(vi, t, j, &-k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        for x in &mut self.u[i] {
            *x = -&*x;
        }
        for row in &mut self.u_inv {
            row[i] = -&row[i];
        }
    }
}

fn add_scaled_row(m: &mut Dense, i: usize, t: usize, k: &Integer) {
    let (src, dst) = if i < t {
        let (lo, hi) = m.split_at_mut(t);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = m.split_at_mut(i);
        (&lo[t], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            d.add_mul(k, s);
        }
    }
}

/// Computes `U * A * V = D` for a dense matrix. `D` is diagonal with positive
/// entries forming a divisibility chain, followed by zeros.
pub(crate) fn dense_snf(a: Dense, ncols: usize, track_v: bool) -> DenseSnf {
    let m = a.len();
    let n = ncols;
    let mut w = Work {
        a,
        m,
        n,
        u: identity(m),
        u_inv: identity(m),
        v: track_v.then(|| identity(n)),
        v_inv: track_v.then(|| identity(n)),
    };
    let mut t = 0;
    while t < m.min(n) {
        // Minimal nonzero entry, lowest row then lowest column on ties.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &w.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| x.cmp_abs(&w.a[bi][bj]).is_lt()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            // Clear column t below the pivot.
            let mut residue = false;
            for i in t + 1..w.m {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_round(&w.a[t][t]);
                    w.add_row(i, t, &-q);
                    residue |= !w.a[i][t].is_zero();
                }
            }
            if residue {
                let i = min_abs_index((t + 1..w.m).map(|i| &w.a[i][t]));
                w.swap_rows(t, t + 1 + i);
                continue;
            }
            // Clear row t right of the pivot.
            for j in t + 1..w.n {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_round(&w.a[t][t]);
                    w.add_col(j, t, &-q);
                    residue |= !w.a[t][j].is_zero();
                }
            }
            if residue {
                let j = min_abs_index((t + 1..w.n).map(|j| &w.a[t][j]));
                w.swap_cols(t, t + 1 + j);
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let p = w.a[t][t].clone();
            let bad = (t + 1..w.m).find(|&i| (t + 1..w.n).any(|j| !p.divides(&w.a[i][j])));
            match bad {
                Some(i) => w.add_row(t, i, &Integer::ONE),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    DenseSnf {
        a: w.a,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        rank: t,
    }
}

fn min_abs_index<'a, I: Iterator<Item = &'a Integer>>(it: I) -> usize {
    let mut best: Option<(usize, &Integer)> = None;
    for (k, x) in it.enumerate() {
        if x.is_zero() {
            continue;
        }
        if best.map_or(true, |(_, b)| x.cmp_abs(b).is_lt()) {
            best = Some((k, x));
        }
    }
    best.expect("residue present").0
}

/// Reduces a set of dense columns to an echelon basis of the lattice they span.
/// Each returned vector has a distinct leading index.
pub(crate) fn echelon_basis(columns: Vec<Vec<Integer>>, dim: usize) -> Vec<Vec<Integer>> {
    let mut basis: Vec<Option<Vec<Integer>>> = vec![None; dim];
    for mut w in columns {
        loop {
            let Some(l) = w.iter().position(|x| !x.is_zero()) else {
                break;
            };
            match &mut basis[l] {
                None => {
                    if w[l].is_negative() {
                        for x in &mut w {
                            *x = -&*x;
                        }
                    }
                    basis[l] = Some(w);
                    break;
                }
                Some(b) => {
                    if b[l].divides(&w[l]) {
                        let q = w[l].div_exact(&b[l]);
                        for (x, y) in w.iter_mut().zip(b.iter()) {
                            x.sub_mul(&q, y);
                        }
                    } else {
                        let (g, x, y) = b[l].extended_gcd(&w[l]);
                        let bl = b[l].div_exact(&g);
                        let wl = w[l].div_exact(&g);
                        let mut nb = vec![Integer::ZERO; dim];
                        let mut nw = vec![Integer::ZERO; dim];
                        for k in l..dim {
                            nb[k].add_mul(&x, &b[k]);
                            nb[k].add_mul(&y, &w[k]);
                            nw[k].add_mul(&bl, &w[k]);
                            nw[k].sub_mul(&wl, &b[k]);
                        }
                        *b = nb;
                        w = nw;
                    }
                }
            }
        }
    }
    basis.into_iter().flatten().collect()
}
