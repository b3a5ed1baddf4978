//! Finite abstract simplicial complexes, G-valued chains, and the built-in geometries.

use std::collections::{BTreeSet, HashMap};

use crate::abelian::{FiniteAbelianGroup, GroupElement};
use crate::error::{Error, Result};

/// A simplex as a strictly increasing list of vertex ids.
pub type Simplex = Vec<usize>;

/// A closed simplicial complex on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    // faces[k] lists the k-simplices in lexicographic order.
    faces: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Builds the downward closure of the given maximal simplices. Every vertex
    /// in `0..vertex_count` is included, even if isolated.
    pub fn from_maximal(vertex_count: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Simplex>> = vec![(0..vertex_count).map(|v| vec![v]).collect()];
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            if s.is_empty() {
                return Err(Error::InvalidInput("empty simplex".into()));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!(
                    "simplex {s:?} repeats a vertex"
                )));
            }
            if let Some(&v) = s.last().filter(|&&v| v >= vertex_count) {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} out of range 0..{vertex_count}"
                )));
            }
            let n = s.len();
            for mask in 1u64..(1u64 << n) {
                let face: Simplex = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| s[i])
                    .collect();
                let d = face.len() - 1;
                while by_dim.len() <= d {
                    by_dim.push(BTreeSet::new());
                }
                by_dim[d].insert(face);
            }
        }
        let faces: Vec<Vec<Simplex>> = by_dim
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let index = faces
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect())
            .collect();
        Ok(SimplicialComplex {
            vertex_count,
            faces,
            index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Highest simplex dimension, or `None` for a complex without vertices.
    pub fn dim(&self) -> Option<usize> {
        self.faces.iter().rposition(|f| !f.is_empty())
    }

    /// The `k`-simplices in lexicographic order (empty if there are none).
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.faces.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplex_index(s).is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(k, f)| {
                if k % 2 == 0 {
                    f.len() as i64
                } else {
                    -(f.len() as i64)
                }
            })
            .sum()
    }

    /// Whether every simplex of `other` belongs to `self`.
    pub fn contains_complex(&self, other: &SimplicialComplex) -> bool {
        other.faces.iter().flatten().all(|s| self.contains(s))
    }

    /// The group `G^{#C(k)}` of `G`-valued `k`-chains, flattened simplex by simplex.
    pub fn chain_group(&self, k: usize, g: &FiniteAbelianGroup) -> FiniteAbelianGroup {
        g.power(self.simplices(k).len())
    }

    /// `∂(σ, g) = Σ_i (-1)^i g · face_i(σ)` as an element of the chain group of
    /// dimension `dim σ - 1`. `face_i` deletes the `i`-th vertex.
    pub fn boundary_chain(
        &self,
        sigma: &[usize],
        g: &GroupElement,
        group: &FiniteAbelianGroup,
    ) -> Result<GroupElement> {
        if sigma.len() < 2 {
            return Err(Error::InvalidInput(
                "boundary of a vertex is not a chain".into(),
            ));
        }
        if !self.contains(sigma) {
            return Err(Error::InvalidInput(format!(
                "{sigma:?} is not a simplex of the complex"
            )));
        }
        let k = sigma.len() - 2;
        let chains = self.chain_group(k, group);
        let r = group.rank();
        let mut vals = vec![0i64; chains.rank()];
        for i in 0..sigma.len() {
            let face: Simplex = sigma
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, &v)| v)
                .collect();
            let idx = self.simplex_index(&face).expect("closed complex");
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (t, &x) in g.residues().iter().enumerate() {
                vals[idx * r + t] += sign * x as i64;
            }
        }
        chains.element(&vals)
    }

    /// Integer boundary matrix `∂_k : C_k -> C_{k-1}` as dense rows, for homology checks.
    pub fn integer_boundary(&self, k: usize) -> Vec<Vec<i64>> {
        let rows = self.simplices(k - 1).len();
        let cols = self.simplices(k);
        let mut m = vec![vec![0i64; cols.len()]; rows];
        for (j, s) in cols.iter().enumerate() {
            for i in 0..s.len() {
                let face: Simplex = s
                    .iter()
                    .enumerate()
                    .filter(|(t, _)| *t != i)
                    .map(|(_, &v)| v)
                    .collect();
                m[self.simplex_index(&face).expect("closed")][j] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    }
}

/// A graph drawn in the plane, possibly with parallel edges, where some pairs
/// of edges cross. Each crossing is a point lying on both edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub crossings: Vec<(usize, usize)>,
}

impl EmbeddedGraph {
    pub fn validate(&self) -> Result<()> {
        for &(u, v) in &self.edges {
            if u == v || u >= self.vertex_count || v >= self.vertex_count {
                return Err(Error::InvalidInput(format!("invalid edge ({u},{v})")));
            }
        }
        for &(a, b) in &self.crossings {
            if a == b || a >= self.edges.len() || b >= self.edges.len() {
                return Err(Error::InvalidInput(format!("invalid crossing ({a},{b})")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Geometry {
    Simplicial(SimplicialComplex),
    Graph(EmbeddedGraph),
}

/// A named built-in geometry together with its natural excitation dimension.
#[derive(Clone, Debug)]
pub struct Builtin {
    pub name: String,
    pub geometry: Geometry,
    pub default_p: i32,
    /// False for geometries whose statistics computation is far beyond a
    /// workstation at the default settings.
    pub desk_scale: bool,
}

fn complete_graph(n: usize) -> Vec<Vec<usize>> {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            e.push(vec![i, j]);
        }
    }
    e
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn grid_surface(n: usize, klein: bool) -> Vec<Vec<usize>> {
    let v = |i: usize, j: usize| -> usize {
        let jj = if klein && i == n {
            (n - j % n) % n
        } else {
            j % n
        };
        (i % n) * n + jj
    };
    let mut tris = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (a, b, c, d) = (v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1));
            tris.push(vec![a, b, d]);
            tris.push(vec![a, c, d]);
        }
    }
    tris
}

/// Names accepted by [`builtin`], with the parameter they take, if any.
pub const BUILTIN_NAMES: &[&str] = &[
    "triangle",
    "square",
    "polygon:<k>",
    "centered-triangle",
    "k5",
    "k33",
    "centered-tetrahedron-1skel",
    "centered-tetrahedron-2skel",
    "boundary-simplex:<d>",
    "points:<n>",
    "double-arc-chain",
    "double-y-graph",
    "torus-7",
    "klein-bottle",
];

/// Looks up a built-in geometry by name; `param` supplies `k`, `d` or `n`
/// for the parameterized families.
pub fn builtin(name: &str, param: Option<usize>) -> Result<Builtin> {
    let need = |what: &str| {
        param.ok_or_else(|| {
            Error::InvalidInput(format!("builtin '{name}' needs a parameter {what}"))
        })
    };
    let simplicial = |n: usize, maximal: Vec<Vec<usize>>, p: i32, desk: bool| -> Result<Builtin> {
        Ok(Builtin {
            name: name.to_string(),
            geometry: Geometry::Simplicial(SimplicialComplex::from_maximal(n, &maximal)?),
            default_p: p,
            desk_scale: desk,
        })
    };
    match name {
        "triangle" => simplicial(3, complete_graph(3), 0, true),
        "square" => simplicial(
            4,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
            0,
            true,
        ),
        "polygon" => {
            let k = need("k")?;
            if k < 3 {
                return Err(Error::InvalidInput(
                    "a polygon needs at least 3 vertices".into(),
                ));
            }
            simplicial(k, (0..k).map(|i| vec![i, (i + 1) % k]).collect(), 0, true)
        }
        // Vertex 0 is the center.
        "centered-triangle" => simplicial(4, complete_graph(4), 0, true),
        "k5" => simplicial(5, complete_graph(5), 0, true),
        "k33" => {
            let mut e = Vec::new();
            for a in 0..3 {
                for b in 3..6 {
                    e.push(vec![a, b]);
                }
            }
            simplicial(6, e, 0, true)
        }
        // Vertex 4 is the center, joined to the four corners.
        "centered-tetrahedron-1skel" => simplicial(5, complete_graph(5), 0, true),
        // The four outer faces plus the six triangles through the center.
        "centered-tetrahedron-2skel" => simplicial(5, subsets(5, 3), 1, true),
        "boundary-simplex" => {
            let d = need("d")?;
            if d < 1 {
                return Err(Error::InvalidInput("boundary-simplex needs d >= 1".into()));
            }
            simplicial(d + 1, subsets(d + 1, d), d as i32 - 2, true)
        }
        "points" => {
            let n = need("n")?;
            if n < 1 {
                return Err(Error::InvalidInput("points needs n >= 1".into()));
            }
            simplicial(n, Vec::new(), -1, true)
        }
        // Vertices 0..3 on a line; two arcs join 0 and 2 (above and below the
        // line) and two join 1 and 3. Arcs on the same side cross once.
        "double-arc-chain" => Ok(Builtin {
            name: name.to_string(),
            geometry: Geometry::Graph(EmbeddedGraph {
                vertex_count: 4,
                edges: vec![(0, 2), (0, 2), (1, 3), (1, 3)],
                crossings: vec![(0, 2), (1, 3)],
            }),
            default_p: 0,
            desk_scale: true,
        }),
        // Triangles {0,1,2} and {3,4,5}; vertex 5 lies inside the first and
        // vertex 2 inside the second, so edges 0-2 / 5-3 and 1-2 / 5-4 cross.
        "double-y-graph" => Ok(Builtin {
            name: name.to_string(),
            geometry: Geometry::Graph(EmbeddedGraph {
                vertex_count: 6,
                edges: vec![(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)],
                crossings: vec![(1, 4), (2, 5)],
            }),
            default_p: 0,
            desk_scale: true,
        }),
        "torus-7" => {
            let tris = (0..7)
                .flat_map(|i| {
                    [
                        vec![i, (i + 1) % 7, (i + 3) % 7],
                        vec![i, (i + 2) % 7, (i + 3) % 7],
                    ]
                })
                .collect();
            simplicial(7, tris, 1, false)
        }
        "klein-bottle" => simplicial(9, grid_surface(3, true), 1, false),
        other => Err(Error::InvalidInput(format!(
            "unknown builtin '{other}'; known: {}",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

/// Parses `name` or `name:param`.
pub fn builtin_from_spec(spec: &str) -> Result<Builtin> {
    match spec.split_once(':') {
        Some((n, p)) => {
            let v: usize = p.trim().parse().map_err(|_| {
                Error::parse(n.len() + 1, format!("invalid builtin parameter '{p}'"))
            })?;
            builtin(n.trim(), Some(v))
        }
        None => builtin(spec.trim(), None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_ordering() {
        let c = SimplicialComplex::from_maximal(4, &[vec![2, 0, 1], vec![1, 3]]).unwrap();
        assert_eq!(
            c.simplices(1),
            &[vec![0, 1], vec![0, 2], vec![1, 2], vec![1, 3]]
        );
        assert_eq!(c.simplices(2), &[vec![0, 1, 2]]);
        assert_eq!(c.dim(), Some(2));
        assert!(SimplicialComplex::from_maximal(2, &[vec![0, 2]]).is_err());
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let g = FiniteAbelianGroup::cyclic(5).unwrap();
        let c = SimplicialComplex::from_maximal(4, &[vec![0, 1, 2, 3]]).unwrap();
        let one = g.element(&[1]).unwrap();
        let d = c.boundary_chain(&[0, 1, 2, 3], &one, &g).unwrap();
        let chains1 = c.chain_group(1, &g);
        let mut total = chains1.zero();
        for (i, face) in c.simplices(2).iter().enumerate() {
            let coef = d.residues()[i] as i64;
            let bf = c.boundary_chain(face, &g.scale(coef, &one), &g).unwrap();
            total = chains1.add(&total, &bf);
        }
        assert!(total.is_zero());
    }

    #[test]
    fn edge_boundary_sign() {
        let g = FiniteAbelianGroup::cyclic(3).unwrap();
        let c = builtin("triangle", None).unwrap();
        let Geometry::Simplicial(c) = c.geometry else {
            panic!()
        };
        let d = c
            .boundary_chain(&[0, 2], &g.element(&[1]).unwrap(), &g)
            .unwrap();
        assert_eq!(d.residues(), &[2, 0, 1]);
    }
}
