//! Excitation models: a finite configuration group, a set of local operators
//! with boundaries and supports, and the locality structure they induce.

use std::collections::{HashMap, VecDeque};

use crate::abelian::{FiniteAbelianGroup, GroupElement, DEFAULT_CLOSURE_CAP};
use crate::complex::{EmbeddedGraph, SimplicialComplex};
use crate::error::{Error, Result};

/// A local operator: its boundary `∂s` (a configuration) and the finite set of
/// points it acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub label: String,
    pub boundary: GroupElement,
    pub support: Vec<usize>,
}

/// Fixed-width bit set over points or operators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    pub fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    pub fn and_not(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }

    pub fn or(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a | b).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

/// An excitation model `(A, S, ∂, J)`.
///
/// Configurations are numbered `0..|A|`, with `0` the trivial configuration.
/// Each configuration has a representative in the ambient group; several
/// ambient elements map to the same configuration in quotient models.
#[derive(Clone, Debug)]
pub struct ExcitationModel {
    ambient: FiniteAbelianGroup,
    reps: Vec<GroupElement>,
    lookup: HashMap<GroupElement, usize>,
    operators: Vec<Operator>,
    point_count: usize,
    supports: Vec<Bits>,
    max_sets: Vec<Bits>,
    fwd: Vec<Vec<u32>>,
    bwd: Vec<Vec<u32>>,
    labels: HashMap<String, usize>,
}

impl ExcitationModel {
    fn build(
        ambient: FiniteAbelianGroup,
        reps: Vec<GroupElement>,
        lookup: HashMap<GroupElement, usize>,
        operators: Vec<Operator>,
        point_count: usize,
    ) -> Result<Self> {
        let mut labels = HashMap::new();
        let mut supports = Vec::with_capacity(operators.len());
        for (i, op) in operators.iter().enumerate() {
            if op.support.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "operator '{}' has empty support",
                    op.label
                )));
            }
            let mut b = Bits::empty(point_count);
            for &x in &op.support {
                if x >= point_count {
                    return Err(Error::InvalidInput(format!(
                        "operator '{}' acts on point {x}, but there are only {point_count} points",
                        op.label
                    )));
                }
                b.insert(x);
            }
            supports.push(b);
            if labels.insert(op.label.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!(
                    "duplicate operator label '{}'",
                    op.label
                )));
            }
        }
        let n = reps.len();
        if n > u32::MAX as usize {
            return Err(Error::ResourceLimit("too many configurations".into()));
        }
        let mut fwd = Vec::with_capacity(operators.len());
        let mut bwd = Vec::with_capacity(operators.len());
        for op in &operators {
            let mut f = Vec::with_capacity(n);
            let mut b = Vec::with_capacity(n);
            for r in &reps {
                let up = ambient.add(r, &op.boundary);
                let down = ambient.sub(r, &op.boundary);
                let (Some(&u), Some(&d)) = (lookup.get(&up), lookup.get(&down)) else {
                    return Err(Error::InvalidInput(format!(
                        "boundary of '{}' leaves the configuration group",
                        op.label
                    )));
                };
                f.push(u as u32);
                b.push(d as u32);
            }
            fwd.push(f);
            bwd.push(b);
        }
        // Maximal sets V_x = {s : x ∈ supp s}.
        let mut sets: Vec<Bits> = Vec::new();
        for x in 0..point_count {
            let mut v = Bits::empty(operators.len());
            let mut any = false;
            for (i, s) in supports.iter().enumerate() {
                if s.contains(x) {
                    v.insert(i);
                    any = true;
                }
            }
            if any && !sets.contains(&v) {
                sets.push(v);
            }
        }
        let max_sets: Vec<Bits> = sets
            .iter()
            .enumerate()
            .filter(|(i, a)| {
                !sets
                    .iter()
                    .enumerate()
                    .any(|(j, b)| *i != j && a.is_subset(b) && *a != b)
            })
            .map(|(_, a)| a.clone())
            .collect();
        Ok(ExcitationModel {
            ambient,
            reps,
            lookup,
            operators,
            point_count,
            supports,
            max_sets,
            fwd,
            bwd,
            labels,
        })
    }

    /// A model from explicit operators. The configuration group is the subgroup
    /// of `ambient` generated by the boundaries.
    pub fn from_explicit(
        ambient: FiniteAbelianGroup,
        operators: Vec<Operator>,
        point_count: usize,
    ) -> Result<Self> {
        Self::from_explicit_with_cap(ambient, operators, point_count, DEFAULT_CLOSURE_CAP)
    }

    pub fn from_explicit_with_cap(
        ambient: FiniteAbelianGroup,
        operators: Vec<Operator>,
        point_count: usize,
        cap: usize,
    ) -> Result<Self> {
        let gens: Vec<GroupElement> = operators.iter().map(|o| o.boundary.clone()).collect();
        let reps = ambient.closure(&gens, cap)?;
        let lookup = reps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Self::build(ambient, reps, lookup, operators, point_count)
    }

    /// The model of `G`-valued `p`-chain excitations on a complex. Operators are
    /// `(σ, g)` for every `(p+1)`-simplex `σ` and `g` in the generating set,
    /// supported on the vertices of `σ`. With `p = -1` configurations are
    /// elements of `G` and operators create `g` at a single vertex.
    pub fn from_simplicial(
        complex: &SimplicialComplex,
        group: &FiniteAbelianGroup,
        p: i32,
        generating_set: Option<&[GroupElement]>,
    ) -> Result<Self> {
        let gens: Vec<GroupElement> = match generating_set {
            Some(g) => g.to_vec(),
            None => group.standard_basis(),
        };
        for g in &gens {
            if !group.contains(g) {
                return Err(Error::InvalidInput(format!(
                    "{g} is not an element of {group}"
                )));
            }
        }
        let single = gens.len() == 1;
        let label = |s: &[usize], k: usize| -> String {
            let vs: Vec<String> = s.iter().map(usize::to_string).collect();
            if single {
                format!("U[{}]", vs.join(","))
            } else {
                format!("U[{};{k}]", vs.join(","))
            }
        };
        let mut ops = Vec::new();
        if p < -1 {
            return Err(Error::InvalidInput(format!(
                "excitation dimension must be at least -1, got {p}"
            )));
        }
        let ambient = if p == -1 {
            for v in 0..complex.vertex_count() {
                for (k, g) in gens.iter().enumerate() {
                    ops.push(Operator {
                        label: label(&[v], k),
                        boundary: g.clone(),
                        support: vec![v],
                    });
                }
            }
            group.clone()
        } else {
            let p = p as usize;
            for sigma in complex.simplices(p + 1) {
                for (k, g) in gens.iter().enumerate() {
                    ops.push(Operator {
                        label: label(sigma, k),
                        boundary: complex.boundary_chain(sigma, g, group)?,
                        support: sigma.clone(),
                    });
                }
            }
            complex.chain_group(p, group)
        };
        Self::from_explicit(ambient, ops, complex.vertex_count())
    }

    /// The point-particle model of a planar graph with crossings. Points are
    /// the vertices followed by one point per crossing; an edge's support is its
    /// two endpoints and the crossings on it. Edge `(u, v)` moves charge from `u` to `v`.
    pub fn from_embedded_graph(
        graph: &EmbeddedGraph,
        group: &FiniteAbelianGroup,
        generating_set: Option<&[GroupElement]>,
    ) -> Result<Self> {
        graph.validate()?;
        let gens: Vec<GroupElement> = match generating_set {
            Some(g) => g.to_vec(),
            None => group.standard_basis(),
        };
        let ambient = group.power(graph.vertex_count);
        let r = group.rank();
        let mut ops = Vec::new();
        for (e, &(u, v)) in graph.edges.iter().enumerate() {
            let mut support = vec![u, v];
            for (c, &(a, b)) in graph.crossings.iter().enumerate() {
                if a == e || b == e {
                    support.push(graph.vertex_count + c);
                }
            }
            support.sort_unstable();
            for (k, g) in gens.iter().enumerate() {
                let mut vals = vec![0i64; ambient.rank()];
                for (t, &x) in g.residues().iter().enumerate() {
                    vals[v * r + t] += x as i64;
                    vals[u * r + t] -= x as i64;
                }
                let label = if gens.len() == 1 {
                    format!("e{e}")
                } else {
                    format!("e{e}[{k}]")
                };
                ops.push(Operator {
                    label,
                    boundary: ambient.element(&vals)?,
                    support: support.clone(),
                });
            }
        }
        Self::from_explicit(ambient, ops, graph.vertex_count + graph.crossings.len())
    }

    /// The relative model of `complex` modulo `sub`: operators on simplices of
    /// `sub` are removed and configurations are taken modulo their boundaries.
    pub fn relative(
        complex: &SimplicialComplex,
        sub: &SimplicialComplex,
        group: &FiniteAbelianGroup,
        p: i32,
        generating_set: Option<&[GroupElement]>,
    ) -> Result<Self> {
        if !complex.contains_complex(sub) {
            return Err(Error::InvalidInput(
                "the subcomplex is not contained in the complex".into(),
            ));
        }
        let full = Self::from_simplicial(complex, group, p, generating_set)?;
        let keep: Vec<usize> = full
            .operators
            .iter()
            .enumerate()
            .filter(|(_, op)| !(p >= 0 && sub.contains(&op.support)))
            .filter(|(_, op)| {
                !(p == -1
                    && op
                        .support
                        .iter()
                        .all(|&v| v < sub.vertex_count() && sub.contains(&[v])))
            })
            .map(|(i, _)| i)
            .collect();
        Ok(full.quotient_model(&keep)?.0)
    }

    pub fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    pub fn config_count(&self) -> usize {
        self.reps.len()
    }

    pub fn operator_count(&self) -> usize {
        self.operators.len()
    }

    pub fn operators(&self) -> &[Operator] {
        &self.operators
    }

    pub fn operator(&self, s: usize) -> &Operator {
        &self.operators[s]
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    /// Dimension of the expression group `Z^(S × A)`.
    pub fn expression_dim(&self) -> usize {
        self.operators.len() * self.reps.len()
    }

    /// Dense index of the basis expression `θ(s, a)`.
    pub fn term_index(&self, s: usize, a: usize) -> usize {
        s * self.reps.len() + a
    }

    pub fn term_of_index(&self, i: usize) -> (usize, usize) {
        (i / self.reps.len(), i % self.reps.len())
    }

    /// Representative of a configuration in the ambient group.
    pub fn config_rep(&self, a: usize) -> &GroupElement {
        &self.reps[a]
    }

    /// The configuration containing an ambient element, if any.
    pub fn config_of(&self, g: &GroupElement) -> Option<usize> {
        self.lookup.get(g).copied()
    }

    /// Configuration index of `∂s`.
    pub fn boundary_config(&self, s: usize) -> usize {
        self.fwd[s][0] as usize
    }

    /// `a + ∂s`.
    pub fn step(&self, s: usize, a: usize) -> usize {
        self.fwd[s][a] as usize
    }

    /// `a - ∂s`.
    pub fn step_back(&self, s: usize, a: usize) -> usize {
        self.bwd[s][a] as usize
    }

    pub fn config_add(&self, a: usize, b: usize) -> usize {
        self.lookup[&self.ambient.add(&self.reps[a], &self.reps[b])]
    }

    pub fn config_neg(&self, a: usize) -> usize {
        self.lookup[&self.ambient.neg(&self.reps[a])]
    }

    /// Resolves an operator label. Besides exact labels, `U<n>` (1-based)
    /// names the `n`-th operator.
    pub fn operator_by_label(&self, label: &str) -> Option<usize> {
        if let Some(&i) = self.labels.get(label) {
            return Some(i);
        }
        let n: usize = label.strip_prefix('U')?.parse().ok()?;
        (n >= 1 && n <= self.operators.len()).then(|| n - 1)
    }

    /// Whether the operators have a common point of support.
    pub fn is_local_set(&self, ops: &[usize]) -> bool {
        let mut b = Bits::empty(self.operators.len());
        for &s in ops {
            b.insert(s);
        }
        self.max_sets.iter().any(|m| b.is_subset(m))
    }

    /// The maximal sets `V_x` of operators sharing a support point.
    pub fn maximal_local_sets(&self) -> Vec<Vec<usize>> {
        self.max_sets
            .iter()
            .map(|m| {
                (0..self.operators.len())
                    .filter(|&i| m.contains(i))
                    .collect()
            })
            .collect()
    }

    /// Whether the set `{a + b : b ∈ A}` restricted to the configurations is a group
    /// enumerated directly in the ambient group (true unless built as a quotient).
    fn is_plain(&self) -> bool {
        self.lookup.len() == self.reps.len()
    }

    /// The submodel on a subset of operators; configurations are restricted to
    /// the subgroup generated by their boundaries.
    pub fn sub_model(&self, keep: &[usize]) -> Result<ExcitationModel> {
        let keep = self.validated(keep)?;
        let mut seen = vec![usize::MAX; self.reps.len()];
        let mut order = Vec::new();
        let mut q = VecDeque::from([0usize]);
        seen[0] = 0;
        while let Some(a) = q.pop_front() {
            order.push(a);
            for &s in &keep {
                let b = self.step(s, a);
                if seen[b] == usize::MAX {
                    seen[b] = 0;
                    q.push_back(b);
                }
            }
        }
        let mut new_index = vec![usize::MAX; self.reps.len()];
        for (i, &a) in order.iter().enumerate() {
            new_index[a] = i;
        }
        let reps = order.iter().map(|&a| self.reps[a].clone()).collect();
        let lookup = self
            .lookup
            .iter()
            .filter(|(_, &a)| new_index[a] != usize::MAX)
            .map(|(g, &a)| (g.clone(), new_index[a]))
            .collect();
        let ops = keep.iter().map(|&s| self.operators[s].clone()).collect();
        Self::build(self.ambient.clone(), reps, lookup, ops, self.point_count)
    }

    /// The quotient model `m|_V`: operators outside `V` are removed and
    /// configurations are taken modulo their boundaries. Returns the model and
    /// the projection from configurations of `self` to those of the quotient.
    pub fn quotient_model(&self, keep: &[usize]) -> Result<(ExcitationModel, Vec<usize>)> {
        let keep = self.validated(keep)?;
        let mut in_v = vec![false; self.operators.len()];
        for &s in &keep {
            in_v[s] = true;
        }
        let killed: Vec<usize> = (0..self.operators.len()).filter(|&s| !in_v[s]).collect();
        let classes = self.cosets(&killed);
        let nclasses = classes.iter().max().map_or(0, |m| m + 1);
        let mut reps = vec![None; nclasses];
        for (a, &c) in classes.iter().enumerate() {
            if reps[c].is_none() {
                reps[c] = Some(self.reps[a].clone());
            }
        }
        let reps: Vec<GroupElement> = reps
            .into_iter()
            .map(|r| r.expect("nonempty class"))
            .collect();
        let lookup = self
            .lookup
            .iter()
            .map(|(g, &a)| (g.clone(), classes[a]))
            .collect();
        let ops = keep.iter().map(|&s| self.operators[s].clone()).collect();
        Ok((
            Self::build(self.ambient.clone(), reps, lookup, ops, self.point_count)?,
            classes,
        ))
    }

    /// Class id of every configuration modulo the boundaries of `ops`,
    /// numbered in order of first appearance.
    pub fn cosets(&self, ops: &[usize]) -> Vec<usize> {
        let n = self.reps.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &s in ops {
            for a in 0..n {
                let b = self.step(s, a);
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut id = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = Vec::with_capacity(n);
        for a in 0..n {
            let r = find(&mut parent, a);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out.push(id[r]);
        }
        out
    }

    fn validated(&self, ops: &[usize]) -> Result<Vec<usize>> {
        let mut v = ops.to_vec();
        v.sort_unstable();
        v.dedup();
        if let Some(&bad) = v.iter().find(|&&s| s >= self.operators.len()) {
            return Err(Error::InvalidInput(format!(
                "operator index {bad} out of range"
            )));
        }
        Ok(v)
    }

    /// Adds an operator whose boundary generates a fresh `Z_n` summand and whose
    /// support is a fresh point, so it commutes with everything.
    pub fn with_cut_free_operator(&self, n: u64, label: &str) -> Result<ExcitationModel> {
        if !self.is_plain() {
            return Err(Error::InvalidInput(
                "cut-free extension needs a model that is not a quotient".into(),
            ));
        }
        let extra = FiniteAbelianGroup::cyclic(n)?;
        let ambient = self.ambient.direct_sum(&extra);
        let mut ops: Vec<Operator> = self
            .operators
            .iter()
            .map(|o| {
                let mut b = o.boundary.0.clone();
                b.push(0);
                Operator {
                    label: o.label.clone(),
                    boundary: GroupElement(b),
                    support: o.support.clone(),
                }
            })
            .collect();
        let mut b = vec![0u64; ambient.rank()];
        b[ambient.rank() - 1] = 1;
        ops.push(Operator {
            label: label.to_string(),
            boundary: GroupElement(b),
            support: vec![self.point_count],
        });
        Self::from_explicit(ambient, ops, self.point_count + 1)
    }

    /// All inclusion-minimal operator sets without a common support point.
    pub fn minimal_empty_sets(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        // Work on distinct supports; a minimal set never holds two operators
        // with equal support.
        let mut distinct: Vec<Bits> = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (s, b) in self.supports.iter().enumerate() {
            match distinct.iter().position(|d| d == b) {
                Some(i) => members[i].push(s),
                None => {
                    distinct.push(b.clone());
                    members.push(vec![s]);
                }
            }
        }
        let mut families = Vec::new();
        let mut visited = 0usize;
        let mut stack: Vec<usize> = Vec::new();
        fn rec(
            start: usize,
            inter: &Bits,
            distinct: &[Bits],
            stack: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            visited: &mut usize,
            cap: usize,
        ) -> Result<()> {
            for i in start..distinct.len() {
                *visited += 1;
                if *visited > cap {
                    return Err(Error::ResourceLimit(format!(
                        "more than {cap} operator sets visited"
                    )));
                }
                let next = inter.and(&distinct[i]);
                stack.push(i);
                if next.is_empty() {
                    let minimal = (0..stack.len() - 1).all(|drop| {
                        let mut acc: Option<Bits> = None;
                        for (k, &f) in stack.iter().enumerate() {
                            if k != drop {
                                acc = Some(match acc {
                                    None => distinct[f].clone(),
                                    Some(a) => a.and(&distinct[f]),
                                });
                            }
                        }
                        acc.map_or(true, |a| !a.is_empty())
                    });
                    if minimal {
                        out.push(stack.clone());
                    }
                } else {
                    rec(i + 1, &next, distinct, stack, out, visited, cap)?;
                }
                stack.pop();
            }
            Ok(())
        }
        rec(
            0,
            &Bits::full(self.point_count),
            &distinct,
            &mut stack,
            &mut families,
            &mut visited,
            cap,
        )?;
        let mut out = Vec::new();
        for fam in families {
            let mut partial: Vec<Vec<usize>> = vec![Vec::new()];
            for &f in &fam {
                let mut next = Vec::new();
                for p in &partial {
                    for &s in &members[f] {
                        let mut q = p.clone();
                        q.push(s);
                        next.push(q);
                    }
                }
                partial = next;
            }
            for mut p in partial {
                p.sort_unstable();
                out.push(p);
                if out.len() > cap {
                    return Err(Error::ResourceLimit(format!(
                        "more than {cap} minimal empty sets"
                    )));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// For an unordered pair `{s, t}`, every inclusion-minimal set `R` of
    /// further operators such that `{s, t} ∪ R` has no common support point.
    pub fn minimal_completions(&self, s: usize, t: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
        let common = self.supports[s].and(&self.supports[t]);
        if common.is_empty() {
            return Ok(vec![Vec::new()]);
        }
        let kills: Vec<(usize, Bits)> = (0..self.operators.len())
            .filter(|&r| r != s && r != t)
            .map(|r| (r, common.and_not(&self.supports[r])))
            .filter(|(_, k)| !k.is_empty())
            .collect();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        fn rec(
            start: usize,
            covered: &Bits,
            target: &Bits,
            kills: &[(usize, Bits)],
            stack: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            cap: usize,
        ) -> Result<()> {
            for i in start..kills.len() {
                let k = &kills[i].1;
                if k.is_subset(covered) {
                    continue;
                }
                let next = covered.or(k);
                stack.push(i);
                if target.is_subset(&next) {
                    let minimal = stack.iter().all(|&a| {
                        let mut others = Bits::empty(target.0.len() * 64);
                        for &b in stack.iter() {
                            if b != a {
                                others = others.or(&kills[b].1);
                            }
                        }
                        !target.is_subset(&others)
                    });
                    if minimal {
                        out.push(stack.iter().map(|&j| kills[j].0).collect());
                        if out.len() > cap {
                            return Err(Error::ResourceLimit(format!(
                                "more than {cap} minimal completions"
                            )));
                        }
                    }
                } else {
                    rec(i + 1, &next, target, kills, stack, out, cap)?;
                }
                stack.pop();
            }
            Ok(())
        }
        let none = Bits(vec![0; common.0.len()]);
        rec(0, &none, &common, &kills, &mut stack, &mut out, cap)?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{builtin, Geometry};

    fn simplicial(name: &str, param: Option<usize>, group: &str) -> ExcitationModel {
        let b = builtin(name, param).unwrap();
        let Geometry::Simplicial(c) = b.geometry else {
            panic!("not simplicial")
        };
        ExcitationModel::from_simplicial(&c, &group.parse().unwrap(), b.default_p, None).unwrap()
    }

    #[test]
    fn triangle_configurations() {
        let m = simplicial("triangle", None, "Z2");
        assert_eq!(m.config_count(), 4);
        assert_eq!(m.operator_count(), 3);
        assert_eq!(m.operator(0).label, "U[0,1]");
        assert_eq!(m.operator_by_label("U2"), Some(1));
        assert_eq!(m.operator_by_label("U[1,2]"), Some(2));
        let m3 = simplicial("triangle", None, "Z3");
        assert_eq!(m3.config_count(), 9);
    }

    #[test]
    fn points_model_uses_the_group_itself() {
        let m = simplicial("points", Some(2), "Z2xZ2");
        assert_eq!(m.config_count(), 4);
        assert_eq!(m.operator_count(), 4);
        assert_eq!(m.operator(1).label, "U[0;1]");
    }

    #[test]
    fn locality_structure_of_centered_triangle() {
        let m = simplicial("centered-triangle", None, "Z2");
        assert_eq!(m.maximal_local_sets().len(), 4);
        // edges 0-1 and 2-3 are disjoint
        let e01 = m.operator_by_label("U[0,1]").unwrap();
        let e23 = m.operator_by_label("U[2,3]").unwrap();
        assert!(!m.is_local_set(&[e01, e23]));
        let mins = m.minimal_empty_sets(1_000_000).unwrap();
        // 3 disjoint pairs and 4 triangles
        assert_eq!(mins.len(), 7);
    }

    #[test]
    fn quotient_and_sub_models() {
        let m = simplicial("triangle", None, "Z2");
        let (q, proj) = m.quotient_model(&[0]).unwrap();
        assert_eq!(q.config_count(), 1);
        let (q, _) = m.quotient_model(&[0, 1]).unwrap();
        assert_eq!(q.config_count(), 2);
        assert_eq!(proj.len(), 4);
        let s = m.sub_model(&[0]).unwrap();
        assert_eq!(s.config_count(), 2);
        assert_eq!(s.operator_count(), 1);
    }

    #[test]
    fn minimal_completions_cover_common_support() {
        let m = simplicial("centered-triangle", None, "Z2");
        let e01 = m.operator_by_label("U[0,1]").unwrap();
        let e02 = m.operator_by_label("U[0,2]").unwrap();
        let c = m.minimal_completions(e01, e02, 1000).unwrap();
        // any edge avoiding vertex 0
        assert_eq!(c.len(), 3);
        let e23 = m.operator_by_label("U[2,3]").unwrap();
        assert_eq!(
            m.minimal_completions(e01, e23, 1000).unwrap(),
            vec![Vec::<usize>::new()]
        );
    }
}
