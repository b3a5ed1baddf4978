//! Working with statistics representatives: norm reduction by random
//! identity moves, recovering a process word from a closed expression, and
//! drawing expressions on the configuration graph.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::{expand_theta, Expression, ProcessWord};
use crate::model::ExcitationModel;
use crate::statistics::Statistics;

#[derive(Clone, Debug)]
pub struct SimplifyOptions {
    /// Attempted moves per restart.
    pub tries: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Probability of accepting a move that keeps the norm unchanged.
    pub plateau: f64,
}

impl Default for SimplifyOptions {
    fn default() -> Self {
        SimplifyOptions {
            tries: 10_000,
            restarts: 16,
            seed: 0,
            plateau: 0.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Simplified {
    pub expression: Expression,
    pub norm: i64,
    /// Restart that produced the result.
    pub restart: usize,
}

/// Randomly adds `±` identity generators to `e`, keeping a move only when the
/// 1-norm drops. Every restart starts from `e` with its own stream of the
/// master seed; the lowest norm wins, ties going to the earlier restart.
pub fn simplify_randomly(
    st: &Statistics,
    e: &Expression,
    opts: &SimplifyOptions,
) -> Result<Simplified> {
    let m = st.model();
    let gens = st.generator_matrix();
    let cols: Vec<Vec<(usize, i64)>> = gens
        .columns()
        .iter()
        .map(|c| {
            c.iter()
                .map(|(i, v)| {
                    v.to_i64().map(|v| (*i, v)).ok_or_else(|| {
                        Error::ResourceLimit("identity coefficient exceeds i64".into())
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let start: Vec<i64> = {
        let mut v = vec![0i64; m.expression_dim()];
        for (s, a, c) in e.terms() {
            v[m.term_index(s, a)] = c;
        }
        v
    };
    let start_norm = e.norm1();
    let mut best: Option<(i64, usize, Vec<i64>)> = None;
    for r in 0..opts.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(r as u64);
        let mut cur = start.clone();
        let mut norm = start_norm;
        if !cols.is_empty() {
            for _ in 0..opts.tries {
                if norm == 0 {
                    break;
                }
                let j = rng.gen_range(0..cols.len());
                let sign: i64 = if rng.gen::<bool>() { 1 } else { -1 };
                let delta: i64 = cols[j]
                    .iter()
                    .map(|&(i, v)| (cur[i] + sign * v).abs() - cur[i].abs())
                    .sum();
                let accept = delta < 0
                    || (delta == 0 && opts.plateau > 0.0 && rng.gen::<f64>() < opts.plateau);
                if accept {
                    for &(i, v) in &cols[j] {
                        cur[i] += sign * v;
                    }
                    norm += delta;
                }
            }
        }
        if best.as_ref().map_or(true, |b| norm < b.0) {
            best = Some((norm, r, cur));
        }
    }
    let (norm, restart, v) = best.expect("at least one restart");
    let mut out = Expression::zero();
    for (i, c) in v.into_iter().enumerate() {
        if c != 0 {
            let (s, a) = m.term_of_index(i);
            out.add_term(s, a, c);
        }
    }
    Ok(Simplified {
        expression: out,
        norm,
        restart,
    })
}

/// Breadth-first search over the configuration graph from `from`, trying
/// operators in id order and each forward before its inverse. Entry `a`
/// holds the predecessor and the letter that reaches `a`.
fn bfs_tree(m: &ExcitationModel, from: usize) -> Vec<Option<(usize, (usize, i32))>> {
    let n = m.config_count();
    let mut prev = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(a) = queue.pop_front() {
        for s in 0..m.operator_count() {
            for (b, e) in [(m.step(s, a), 1), (m.step_back(s, a), -1)] {
                if !seen[b] {
                    seen[b] = true;
                    prev[b] = Some((a, (s, e)));
                    queue.push_back(b);
                }
            }
        }
    }
    prev
}

/// Letters of the shortest path from the BFS root to `a`, in traversal order.
fn path_to(
    prev: &[Option<(usize, (usize, i32))>],
    root: usize,
    a: usize,
) -> Option<Vec<(usize, i32)>> {
    let mut out = Vec::new();
    let mut cur = a;
    while cur != root {
        let (p, l) = prev[cur]?;
        out.push(l);
        cur = p;
    }
    out.reverse();
    Some(out)
}

fn word_from_walk(walk: &[(usize, i32)]) -> ProcessWord {
    ProcessWord {
        letters: walk.iter().rev().copied().collect(),
    }
}

/// The word whose action moves `0` to `a` along a shortest path.
pub fn shortest_words(m: &ExcitationModel) -> Vec<Option<ProcessWord>> {
    let prev = bfs_tree(m, 0);
    (0..m.config_count())
        .map(|a| path_to(&prev, 0, a).map(|w| word_from_walk(&w)))
        .collect()
}

/// Finds `g` with `θ(g, base) = e` for a closed expression `e`. Every
/// nonzero term becomes that many traversals of its edge in the
/// configuration graph; each connected piece is walked as an Euler circuit,
/// reached from `base` by a shortest path that is walked back afterwards.
pub fn reconstruct_process(
    m: &ExcitationModel,
    e: &Expression,
    base: usize,
) -> Result<ProcessWord> {
    if !e.is_closed(m) {
        return Err(Error::NotClosed);
    }
    // edge: (from, to, letter)
    let mut edges: Vec<(usize, usize, (usize, i32))> = Vec::new();
    for (s, a, c) in e.terms() {
        let b = m.step(s, a);
        for _ in 0..c.unsigned_abs() {
            edges.push(if c > 0 {
                (a, b, (s, 1))
            } else {
                (b, a, (s, -1))
            });
        }
    }
    let n = m.config_count();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(a, _, _)) in edges.iter().enumerate() {
        out_edges[a].push(i);
    }
    // undirected components by union-find over configurations
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b, _) in &edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut starts: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, _, _) in &edges {
        let r = find(&mut parent, a);
        let entry = starts.entry(r).or_insert(a);
        if a == base || (*entry != base && a < *entry) {
            *entry = a;
        }
    }
    let prev = bfs_tree(m, base);
    let mut used = vec![false; edges.len()];
    let mut next = vec![0usize; n];
    let mut walk: Vec<(usize, i32)> = Vec::new();
    for (_, v) in starts {
        let connector = path_to(&prev, base, v).ok_or_else(|| {
            Error::Inconsistent(format!(
                "configuration {v} is unreachable from the base configuration"
            ))
        })?;
        walk.extend(connector.iter().copied());
        // Hierholzer
        let mut stack: Vec<(usize, Option<(usize, i32)>)> = vec![(v, None)];
        let mut circuit: Vec<(usize, i32)> = Vec::new();
        while let Some(&(x, _)) = stack.last() {
            let mut advanced = false;
            while next[x] < out_edges[x].len() {
                let id = out_edges[x][next[x]];
                next[x] += 1;
                if !used[id] {
                    used[id] = true;
                    stack.push((edges[id].1, Some(edges[id].2)));
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                let (_, l) = stack.pop().expect("nonempty");
                if let Some(l) = l {
                    circuit.push(l);
                }
            }
        }
        circuit.reverse();
        walk.extend(circuit);
        walk.extend(connector.iter().rev().map(|&(s, x)| (s, -x)));
    }
    if used.iter().any(|u| !u) {
        return Err(Error::Inconsistent(
            "edges left after Euler circuits".into(),
        ));
    }
    let word = word_from_walk(&walk);
    let (check, end) = expand_theta(m, &word, base);
    if check != *e || end != base {
        return Err(Error::Inconsistent(
            "reconstructed process does not expand to the expression".into(),
        ));
    }
    Ok(word)
}

/// Graphviz rendering of `e` on the configuration graph: an edge
/// `a -> a + ∂s` per nonzero term, red for positive and blue for negative
/// coefficients, with each configuration labelled by a shortest word
/// creating it.
pub fn emit_dot(m: &ExcitationModel, e: &Expression) -> String {
    let words = shortest_words(m);
    let mut nodes = std::collections::BTreeSet::new();
    for (s, a, _) in e.terms() {
        nodes.insert(a);
        nodes.insert(m.step(s, a));
    }
    let mut out = String::from("digraph expression {\n");
    for a in nodes {
        let label = match &words[a] {
            Some(w) if w.is_empty() => "1".to_string(),
            Some(w) => w.display(m),
            None => format!("a{a}"),
        };
        let _ = writeln!(out, "  c{a} [label=\"{}\"];", escape(&label));
    }
    for (s, a, c) in e.terms() {
        let color = if c > 0 { "red" } else { "blue" };
        let label = format!("{c}×{}", m.operator(s).label);
        let _ = writeln!(
            out,
            "  c{a} -> c{} [label=\"{}\", color={color}];",
            m.step(s, a),
            escape(&label)
        );
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
