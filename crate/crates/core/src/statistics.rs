//! Locality identities, the invariant expressions, and the statistics group
//! `T = E_inv / E_id` together with its torsion cross-check `T_f`.

use std::collections::HashSet;

use exstat_linalg::{
    snf_of_span, snf_with, solve_with, Integer, Limits, SnfOptions, SnfResult, SparseIntMatrix,
    SparseVec,
};

use crate::error::{Error, Result};
use crate::expr::{expand_theta, Expression, ProcessWord};
use crate::model::ExcitationModel;

const SPAN_BATCH: usize = 20_000;

/// Which spanning family of locality identities to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityFamily {
    /// For every pair `{s, t}` and every minimal `R` with `{s, t} ∪ R` lacking
    /// a common support point, the alternating sum of `θ([t, s], a + ∂I)` over
    /// subsets `I ⊆ R`.
    PairMinimal,
    /// The same sum, taken only over pairs inside inclusion-minimal sets with
    /// empty common support.
    MinimalSets,
    /// Every nested commutator `θ([s_k, [..., [s_2, s_1]]], a)` over ordered
    /// sequences of distinct operators with empty common support, up to the
    /// given length.
    Naive { max_letters: usize },
}

/// Caps on identity generation and on the linear algebra.
#[derive(Clone, Debug)]
pub struct StatsOptions {
    pub family: IdentityFamily,
    pub max_generators: usize,
    pub max_sets: usize,
    pub limits: Limits,
}

impl Default for StatsOptions {
    fn default() -> Self {
        StatsOptions {
            family: IdentityFamily::PairMinimal,
            max_generators: 5_000_000,
            max_sets: 1_000_000,
            limits: Limits::default(),
        }
    }
}

/// Generator matrix of `E_id` in the dense `(s, a)` coordinates of `E`.
pub fn identity_generators(m: &ExcitationModel, opts: &StatsOptions) -> Result<SparseIntMatrix> {
    let mut cols = ColumnSet::new(opts.max_generators);
    match opts.family {
        IdentityFamily::PairMinimal => {
            for s in 0..m.operator_count() {
                for t in s + 1..m.operator_count() {
                    for r in m.minimal_completions(s, t, opts.max_sets)? {
                        reduced_columns(m, s, t, &r, &mut cols)?;
                    }
                }
            }
        }
        IdentityFamily::MinimalSets => {
            for set in m.minimal_empty_sets(opts.max_sets)? {
                for (i, &s) in set.iter().enumerate() {
                    for &t in &set[i + 1..] {
                        let rest: Vec<usize> =
                            set.iter().copied().filter(|&x| x != s && x != t).collect();
                        reduced_columns(m, s, t, &rest, &mut cols)?;
                    }
                }
            }
        }
        IdentityFamily::Naive { max_letters } => {
            let mut seq = Vec::new();
            naive_sequences(m, max_letters, &mut seq, &mut cols, opts.max_sets)?;
        }
    }
    Ok(cols.into_matrix(m.expression_dim()))
}

struct ColumnSet {
    seen: HashSet<Vec<(u32, i64)>>,
    order: Vec<Vec<(u32, i64)>>,
    cap: usize,
}

impl ColumnSet {
    fn new(cap: usize) -> Self {
        ColumnSet {
            seen: HashSet::new(),
            order: Vec::new(),
            cap,
        }
    }

    fn push(&mut self, mut terms: Vec<(u32, i64)>) -> Result<()> {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(u32, i64)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        if out.is_empty() {
            return Ok(());
        }
        if out[0].1 < 0 {
            for t in &mut out {
                t.1 = -t.1;
            }
        }
        if self.seen.insert(out.clone()) {
            if self.order.len() >= self.cap {
                return Err(Error::ResourceLimit(format!(
                    "more than {} identity generators",
                    self.cap
                )));
            }
            self.order.push(out);
        }
        Ok(())
    }

    fn into_matrix(self, rows: usize) -> SparseIntMatrix {
        let cols = self
            .order
            .into_iter()
            .map(|c| {
                SparseVec::from_sorted(
                    c.into_iter()
                        .map(|(i, v)| (i as usize, Integer::from(v)))
                        .collect(),
                )
            })
            .collect();
        SparseIntMatrix::from_columns(rows, cols)
    }
}

/// Adds, for every configuration `a`, `Σ_{I ⊆ rest} (-1)^|I| θ([t, s], a + Σ_I ∂)`.
fn reduced_columns(
    m: &ExcitationModel,
    s: usize,
    t: usize,
    rest: &[usize],
    cols: &mut ColumnSet,
) -> Result<()> {
    if rest.len() > 20 {
        return Err(Error::ResourceLimit(
            "identity with more than 20 outer operators".into(),
        ));
    }
    let n = m.config_count();
    let idx = |op: usize, a: usize| (op * n + a) as u32;
    for a in 0..n {
        let mut terms = Vec::with_capacity(4 << rest.len());
        for mask in 0u32..(1 << rest.len()) {
            let mut b = a;
            for (k, &r) in rest.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    b = m.step(r, b);
                }
            }
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            // θ([t, s], b) = θ(s, b) + θ(t, b + ∂s) - θ(s, b + ∂t) - θ(t, b)
            terms.push((idx(s, b), sign));
            terms.push((idx(t, m.step(s, b)), sign));
            terms.push((idx(s, m.step(t, b)), -sign));
            terms.push((idx(t, b), -sign));
        }
        cols.push(terms)?;
    }
    Ok(())
}

fn naive_sequences(
    m: &ExcitationModel,
    max_letters: usize,
    seq: &mut Vec<usize>,
    cols: &mut ColumnSet,
    cap: usize,
) -> Result<()> {
    if seq.len() >= 2 && !m.is_local_set(seq) {
        let mut w = ProcessWord::letter(seq[0]);
        for &s in &seq[1..] {
            w = ProcessWord::commutator(&ProcessWord::letter(s), &w);
        }
        for a in 0..m.config_count() {
            let (e, _) = expand_theta(m, &w, a);
            cols.push(
                e.terms()
                    .map(|(s, a, c)| (m.term_index(s, a) as u32, c))
                    .collect(),
            )?;
        }
        if cols.order.len() > cap {
            return Err(Error::ResourceLimit(format!(
                "more than {cap} naive identities"
            )));
        }
    }
    if seq.len() == max_letters {
        return Ok(());
    }
    for s in 0..m.operator_count() {
        if !seq.contains(&s) {
            seq.push(s);
            naive_sequences(m, max_letters, seq, cols, cap)?;
            seq.pop();
        }
    }
    Ok(())
}

/// Invariant factors of a finite abelian group, with free summands counted
/// separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInvariants {
    /// Factors greater than 1, in divisibility order.
    pub torsion: Vec<Integer>,
    pub free_rank: usize,
}

impl GroupInvariants {
    pub fn from_diagonal(diag: &[Integer]) -> Self {
        GroupInvariants {
            torsion: diag
                .iter()
                .filter(|x| !x.is_zero() && !x.is_one())
                .cloned()
                .collect(),
            free_rank: diag.iter().filter(|x| x.is_zero()).count(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Factors as plain integers, largest first (`[4, 4, 2]` for `Z4xZ4xZ2`).
    pub fn factors_desc(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .torsion
            .iter()
            .map(|x| x.to_i64().unwrap_or(i64::MAX) as u64)
            .collect();
        v.reverse();
        v
    }
}

impl std::fmt::Display for GroupInvariants {
    /// `Z4xZ4xZ2`, `Z2xZ`, or `0` for the trivial group.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().rev().map(|x| format!("Z{x}")).collect();
        parts.extend(std::iter::repeat("Z".to_string()).take(self.free_rank));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("x"))
        }
    }
}

/// Result of the full computation.
#[derive(Clone, Debug)]
pub struct StatisticsResult {
    /// `T = E_inv / E_id`.
    pub t: GroupInvariants,
    /// One representative per nontrivial factor of `T`, in the order of `t.torsion`.
    pub generators: Vec<Expression>,
    /// Torsion of `E / E_id`.
    pub t_f: GroupInvariants,
    pub dim_e: usize,
    pub identity_count: usize,
    pub dim_e_inv: usize,
}

/// The identity lattice of a model with its decomposition, ready to answer
/// order queries.
pub struct Statistics<'m> {
    model: &'m ExcitationModel,
    opts: StatsOptions,
    generators: SparseIntMatrix,
    snf: SnfResult,
    local: Vec<(Vec<bool>, Vec<usize>, usize)>,
}

impl<'m> Statistics<'m> {
    pub fn new(model: &'m ExcitationModel) -> Result<Self> {
        Self::with_options(model, StatsOptions::default())
    }

    pub fn with_options(model: &'m ExcitationModel, opts: StatsOptions) -> Result<Self> {
        let generators = identity_generators(model, &opts)?;
        Self::from_generators(model, opts, generators)
    }

    fn from_generators(
        model: &'m ExcitationModel,
        opts: StatsOptions,
        generators: SparseIntMatrix,
    ) -> Result<Self> {
        let snf = snf_of_span(&generators, SPAN_BATCH, &opts.limits)?;
        let local = model
            .maximal_local_sets()
            .into_iter()
            .map(|v| {
                let mut mask = vec![false; model.operator_count()];
                for &s in &v {
                    mask[s] = true;
                }
                let killed: Vec<usize> =
                    (0..model.operator_count()).filter(|&s| !mask[s]).collect();
                let classes = model.cosets(&killed);
                let count = classes.iter().max().map_or(1, |c| c + 1);
                (mask, classes, count)
            })
            .collect();
        Ok(Statistics {
            model,
            opts,
            generators,
            snf,
            local,
        })
    }

    pub fn model(&self) -> &ExcitationModel {
        self.model
    }

    pub fn generator_matrix(&self) -> &SparseIntMatrix {
        &self.generators
    }

    pub fn identity_count(&self) -> usize {
        self.generators.ncols()
    }

    pub fn identity(&self, j: usize) -> Result<Expression> {
        Expression::from_sparse(self.generators.column(j), self.model)
    }

    /// The torsion of `E / E_id`.
    pub fn t_f(&self) -> GroupInvariants {
        GroupInvariants {
            torsion: self.snf.torsion(),
            free_rank: 0,
        }
    }

    /// Representatives of the factors of `T_f`: the columns of `U⁻¹` at the
    /// pivots whose invariant factor exceeds 1.
    pub fn t_f_generators(&self) -> Result<Vec<Expression>> {
        let rt = self.snf.row_transform();
        self.snf
            .invariants()
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_one())
            .map(|(i, _)| Expression::from_sparse(&rt.inverse_column(i), self.model))
            .collect()
    }

    /// Whether `e` is closed and vanishes in every quotient near a support point.
    pub fn is_invariant(&self, e: &Expression) -> bool {
        if !e.is_closed(self.model) {
            return false;
        }
        self.local.iter().all(|(mask, classes, count)| {
            let mut acc = std::collections::HashMap::new();
            for (s, a, c) in e.terms() {
                if mask[s] {
                    *acc.entry(s * count + classes[a]).or_insert(0i64) += c;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }

    /// Order code: `0` if `e ∉ E_inv`, `1` if `e ∈ E_id`, otherwise the
    /// order of `e` in `E_inv / E_id`.
    pub fn order_of(&self, e: &Expression) -> Result<Integer> {
        if !self.is_invariant(e) {
            return Ok(Integer::ZERO);
        }
        self.order_in_quotient(e)
    }

    /// The order of `e` in `E / E_id`, failing if it is infinite.
    pub fn order_in_quotient(&self, e: &Expression) -> Result<Integer> {
        let c = self.snf.row_transform().apply(&e.to_sparse(self.model));
        let rank = self.snf.rank();
        if c[rank..].iter().any(|x| !x.is_zero()) {
            return Err(Error::FreeCoordinate);
        }
        let mut order = Integer::ONE;
        for (l, ci) in self.snf.invariants().iter().zip(&c) {
            let g = l.gcd(ci);
            order = order.lcm(&l.div_exact(&g));
        }
        Ok(order)
    }

    /// Constraint matrix whose kernel is `E_inv`: the graph boundary, then one
    /// block per maximal local set summing coefficients into quotient classes.
    pub fn constraint_matrix(&self) -> SparseIntMatrix {
        let m = self.model;
        let n = m.config_count();
        let mut offsets = Vec::with_capacity(self.local.len());
        let mut rows = n;
        for (mask, _, count) in &self.local {
            offsets.push(rows);
            rows += mask.iter().filter(|&&b| b).count() * count;
        }
        let local_index: Vec<Vec<usize>> = self
            .local
            .iter()
            .map(|(mask, _, _)| {
                let mut k = 0;
                mask.iter()
                    .map(|&b| {
                        let i = k;
                        if b {
                            k += 1;
                        }
                        i
                    })
                    .collect()
            })
            .collect();
        let mut cols = Vec::with_capacity(m.expression_dim());
        for s in 0..m.operator_count() {
            for a in 0..n {
                let mut entries = Vec::new();
                let b = m.step(s, a);
                if b != a {
                    entries.push((b, Integer::ONE));
                    entries.push((a, Integer::from(-1)));
                }
                for (v, (mask, classes, count)) in self.local.iter().enumerate() {
                    if mask[s] {
                        entries.push((
                            offsets[v] + local_index[v][s] * count + classes[a],
                            Integer::ONE,
                        ));
                    }
                }
                cols.push(SparseVec::from_pairs(entries));
            }
        }
        SparseIntMatrix::from_columns(rows, cols)
    }

    /// Computes `T`.
    ///
    /// With `U * M * V = D` for the identity matrix `M`, `E / E_id` has
    /// coordinates `U * e`: torsion coordinates at pivots with `λ > 1` and free
    /// coordinates past the rank. The constraint matrix `C` kills `E_id`, so it
    /// induces a map on `E / E_id` whose kernel is `E_inv / E_id`. Torsion
    /// lands in the torsion-free target as zero, so `T = T_f ⊕ Z^k` with `k`
    /// the nullity of `C * U⁻¹` on the free coordinates.
    pub fn compute(&self) -> Result<StatisticsResult> {
        let m = self.model;
        let n = m.expression_dim();
        let c = self.constraint_matrix();
        let mut limits = self.opts.limits.clone();
        limits.max_rows = limits.max_rows.max(c.nrows());
        for w in self.generators.columns() {
            if !c.mul_vec(w).is_zero() {
                return Err(Error::Inconsistent(
                    "a locality identity is not an invariant expression".into(),
                ));
            }
        }
        let rank_c = snf_with(
            &c,
            &SnfOptions {
                track_v: false,
                limits: limits.clone(),
            },
        )?
        .rank();
        let rt = self.snf.row_transform();
        let rank = self.snf.rank();
        let mut generators = Vec::new();
        for (i, l) in self.snf.invariants().iter().enumerate() {
            if l.is_one() {
                continue;
            }
            let g = rt.inverse_column(i);
            if !c.mul_vec(&g).is_zero() {
                return Err(Error::Inconsistent(
                    "a torsion representative is not an invariant expression".into(),
                ));
            }
            generators.push(Expression::from_sparse(&g, m)?);
        }
        let free: Vec<SparseVec> = (rank..n)
            .map(|i| c.mul_vec(&rt.inverse_column(i)))
            .collect();
        let image = SparseIntMatrix::from_columns(c.nrows(), free);
        let rank_free = snf_with(
            &image,
            &SnfOptions {
                track_v: false,
                limits,
            },
        )?
        .rank();
        let t = GroupInvariants {
            torsion: self.snf.torsion(),
            free_rank: (n - rank) - rank_free,
        };
        if t.free_rank != 0 {
            return Err(Error::Inconsistent(format!(
                "statistics group has {} free summands",
                t.free_rank
            )));
        }
        if rank + rank_c != n {
            return Err(Error::Inconsistent(format!(
                "rank E_id = {rank} but dim E_inv = {}",
                n - rank_c
            )));
        }
        Ok(StatisticsResult {
            t,
            generators,
            t_f: self.t_f(),
            dim_e: n,
            identity_count: self.generators.ncols(),
            dim_e_inv: n - rank_c,
        })
    }

    /// A basis of `E_inv`: the integer kernel of the constraint matrix.
    pub fn e_inv_basis(&self) -> Result<SparseIntMatrix> {
        let c = self.constraint_matrix();
        let mut limits = self.opts.limits.clone();
        limits.max_rows = limits.max_rows.max(c.nrows());
        let dec = snf_with(
            &c,
            &SnfOptions {
                track_v: true,
                limits,
            },
        )?;
        let idx: Vec<usize> = (dec.rank()..self.model.expression_dim()).collect();
        let cols = dec.col_transform().expect("tracked").columns(&idx);
        Ok(SparseIntMatrix::from_columns(
            self.model.expression_dim(),
            cols,
        ))
    }

    /// Computes `T` directly as a quotient of lattices: a kernel basis of the
    /// constraint matrix spans `E_inv`, every identity is written in that
    /// basis, and the invariant factors of the resulting quotient are read off.
    /// Needs a column transform of the constraint matrix, so it is meant for
    /// small models and as a cross-check of [`Statistics::compute`].
    pub fn compute_via_kernel(&self) -> Result<StatisticsResult> {
        let m = self.model;
        let c = self.constraint_matrix();
        let mut limits = self.opts.limits.clone();
        limits.max_rows = limits.max_rows.max(c.nrows()).max(1);
        if m.expression_dim() > self.opts.limits.max_rows {
            return Err(Error::ResourceLimit(format!(
                "expression group has dimension {}, cap is {}",
                m.expression_dim(),
                self.opts.limits.max_rows
            )));
        }
        let dec = snf_with(
            &c,
            &SnfOptions {
                track_v: true,
                limits: limits.clone(),
            },
        )?;
        let v = dec.col_transform().expect("tracked");
        let dim_inv = m.expression_dim() - dec.rank();
        let mut coords = Vec::with_capacity(self.generators.ncols());
        for w in self.generators.columns() {
            if !c.mul_vec(w).is_zero() {
                return Err(Error::Inconsistent(
                    "a locality identity is not an invariant expression".into(),
                ));
            }
            coords.push(SparseVec::from_dense(&v.kernel_coordinates(w)));
        }
        let coord_matrix = SparseIntMatrix::from_columns(dim_inv, coords);
        let q = snf_with(
            &coord_matrix,
            &SnfOptions {
                track_v: false,
                limits,
            },
        )?;
        let mut diag = q.invariants().to_vec();
        diag.resize(dim_inv, Integer::ZERO);
        let t = GroupInvariants::from_diagonal(&diag);
        let mut generators = Vec::new();
        let rt = q.row_transform();
        let rank = dec.rank();
        for (i, l) in q.invariants().iter().enumerate() {
            if l.is_one() {
                continue;
            }
            let y = rt.inverse_column(i);
            let mut full = vec![Integer::ZERO; m.expression_dim()];
            for (j, val) in y.iter() {
                full[rank + j] = val.clone();
            }
            generators.push(Expression::from_sparse(&v.apply(&full), m)?);
        }
        let t_f = self.t_f();
        if t.free_rank != 0 {
            return Err(Error::Inconsistent(format!(
                "statistics group has {} free summands",
                t.free_rank
            )));
        }
        if t.torsion != t_f.torsion {
            return Err(Error::Inconsistent(format!("T = {t} but T_f = {t_f}")));
        }
        Ok(StatisticsResult {
            t,
            generators,
            t_f,
            dim_e: m.expression_dim(),
            identity_count: self.generators.ncols(),
            dim_e_inv: dim_inv,
        })
    }

    /// A representative of `e` modulo `E_id` with no terms on operator `t`.
    pub fn eliminate_operator(&self, e: &Expression, t: usize) -> Result<Expression> {
        let m = self.model;
        let n = m.config_count();
        let rows: Vec<usize> = (t * n..(t + 1) * n).collect();
        let mt = self.generators.select_rows(&rows);
        let target = SparseVec::from_pairs((0..n).map(|a| (a, Integer::from(e.coeff(t, a)))));
        let dec = snf_with(
            &mt,
            &SnfOptions {
                track_v: true,
                limits: self.opts.limits.clone(),
            },
        )?;
        let x = solve_with(&dec, &target).ok_or_else(|| {
            Error::NoSolution(format!(
                "no representative avoids operator '{}'",
                m.operator(t).label
            ))
        })?;
        let shift = Expression::from_sparse(&self.generators.mul_vec(&x), m)?;
        let out = e.sub(&shift);
        debug_assert!(!out.uses_operator(t));
        Ok(out)
    }

    /// The lattice `E_id + F` where `F` is spanned by `θ(g, a)` for each word
    /// and every configuration `a`.
    pub fn impose(&self, words: &[ProcessWord]) -> Result<Statistics<'m>> {
        let m = self.model;
        let mut cols: Vec<SparseVec> = self.generators.columns().to_vec();
        for w in words {
            for a in 0..m.config_count() {
                let (e, _) = expand_theta(m, w, a);
                if !e.is_zero() {
                    cols.push(e.to_sparse(m));
                }
            }
        }
        let g = SparseIntMatrix::from_columns(m.expression_dim(), cols);
        Self::from_generators(m, self.opts.clone(), g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{builtin, Geometry};
    use crate::expr::parse_process;

    fn model(name: &str, param: Option<usize>, group: &str) -> ExcitationModel {
        let b = builtin(name, param).unwrap();
        match b.geometry {
            Geometry::Simplicial(c) => {
                ExcitationModel::from_simplicial(&c, &group.parse().unwrap(), b.default_p, None)
                    .unwrap()
            }
            Geometry::Graph(g) => {
                ExcitationModel::from_embedded_graph(&g, &group.parse().unwrap(), None).unwrap()
            }
        }
    }

    #[test]
    fn triangle_z2() {
        let m = model("triangle", None, "Z2");
        let st = Statistics::new(&m).unwrap();
        let r = st.compute().unwrap();
        assert_eq!(r.t.to_string(), "Z2");
        assert_eq!(r.t_f.to_string(), "Z2");
        let w = parse_process("[U2, U1^2]", &m).unwrap();
        let (e, _) = expand_theta(&m, &w, 0);
        assert_eq!(st.order_of(&e).unwrap(), Integer::from(2));
        assert_eq!(
            st.order_of(&Expression::theta(0, 0)).unwrap(),
            Integer::ZERO
        );
        for g in &r.generators {
            assert_eq!(st.order_of(g).unwrap(), Integer::from(2));
        }
    }

    #[test]
    fn centered_triangle_z2() {
        let m = model("centered-triangle", None, "Z2");
        let r = Statistics::new(&m).unwrap().compute().unwrap();
        assert_eq!(r.t.to_string(), "Z4");
    }

    #[test]
    fn single_operator_has_no_identities() {
        let g: crate::FiniteAbelianGroup = "Z2".parse().unwrap();
        let op = crate::Operator {
            label: "s".into(),
            boundary: g.element(&[1]).unwrap(),
            support: vec![0],
        };
        let m = ExcitationModel::from_explicit(g, vec![op], 1).unwrap();
        let st = Statistics::new(&m).unwrap();
        assert_eq!(st.identity_count(), 0);
        let r = st.compute().unwrap();
        assert_eq!(r.dim_e_inv, 0);
        assert!(r.t.is_trivial());
    }

    #[test]
    fn kernel_route_agrees() {
        for (name, param, group) in [
            ("triangle", None, "Z3"),
            ("centered-triangle", None, "Z2"),
            ("points", Some(2), "Z2xZ2"),
            ("double-arc-chain", None, "Z2"),
        ] {
            let m = model(name, param, group);
            let st = Statistics::new(&m).unwrap();
            let a = st.compute().unwrap();
            let b = st.compute_via_kernel().unwrap();
            assert_eq!(a.t, b.t, "{name}");
            assert_eq!(a.dim_e_inv, b.dim_e_inv, "{name}");
            for g in b.generators.iter().chain(&a.generators) {
                assert!(st.is_invariant(g));
            }
        }
    }

    #[test]
    fn group_display() {
        let g = GroupInvariants {
            torsion: vec![Integer::from(2), Integer::from(4), Integer::from(4)],
            free_rank: 0,
        };
        assert_eq!(g.to_string(), "Z4xZ4xZ2");
        assert_eq!(
            GroupInvariants {
                torsion: vec![],
                free_rank: 0
            }
            .to_string(),
            "0"
        );
    }
}
