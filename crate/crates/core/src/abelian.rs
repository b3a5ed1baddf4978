//! Finite abelian groups `Z_{N_1} ⊕ ... ⊕ Z_{N_k}` and their elements.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default cap on the size of an enumerated subgroup.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 16;

/// An element as a vector of residues, one per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `⊕ Z_{N_i}` with every `N_i >= 2`. The empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidInput(format!(
                "cyclic factor order must be at least 2, got {bad}"
            )));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { orders: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Group order, or `None` if it does not fit in a `u64`.
    pub fn order(&self) -> Option<u64> {
        self.orders
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    /// The standard basis `e_i`, one element per cyclic factor.
    pub fn standard_basis(&self) -> Vec<GroupElement> {
        (0..self.rank())
            .map(|i| {
                let mut v = vec![0; self.rank()];
                v[i] = 1;
                GroupElement(v)
            })
            .collect()
    }

    /// Builds an element from arbitrary integers, reducing each modulo its factor.
    pub fn element(&self, values: &[i64]) -> Result<GroupElement> {
        if values.len() != self.rank() {
            return Err(Error::InvalidInput(format!(
                "element has {} residues, group has {} factors",
                values.len(),
                self.rank()
            )));
        }
        Ok(GroupElement(
            values
                .iter()
                .zip(&self.orders)
                .map(|(&v, &n)| v.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.rank() && g.0.iter().zip(&self.orders).all(|(&r, &n)| r < n)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| ((x as u128 + y as u128) % n as u128) as u64)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| if x == 0 { 0 } else { n - x })
                .collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| {
                    let km = (k as i128).rem_euclid(n as i128) as u128;
                    ((km * x as u128) % n as u128) as u64
                })
                .collect(),
        )
    }

    /// Order of an element: the lcm of `N_i / gcd(N_i, r_i)`.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.0.iter().zip(&self.orders).fold(1u64, |acc, (&r, &n)| {
            let o = n / gcd(n, r);
            acc / gcd(acc, o) * o
        })
    }

    /// `self ⊕ other`.
    pub fn direct_sum(&self, other: &FiniteAbelianGroup) -> FiniteAbelianGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        FiniteAbelianGroup { orders }
    }

    /// `self^k`, the direct sum of `k` copies.
    pub fn power(&self, k: usize) -> FiniteAbelianGroup {
        let mut orders = Vec::with_capacity(self.rank() * k);
        for _ in 0..k {
            orders.extend_from_slice(&self.orders);
        }
        FiniteAbelianGroup { orders }
    }

    /// Enumerates the subgroup generated by `generators` in breadth-first
    /// order, starting from zero. Fails if more than `cap` elements are found.
    pub fn closure(&self, generators: &[GroupElement], cap: usize) -> Result<Vec<GroupElement>> {
        for g in generators {
            if !self.contains(g) {
                return Err(Error::InvalidInput(format!(
                    "{g} is not an element of {self}"
                )));
            }
        }
        let mut seen: HashMap<GroupElement, ()> = HashMap::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        let zero = self.zero();
        seen.insert(zero.clone(), ());
        queue.push_back(zero);
        while let Some(x) = queue.pop_front() {
            out.push(x.clone());
            if out.len() > cap {
                return Err(Error::ResourceLimit(format!(
                    "subgroup has more than {cap} elements"
                )));
            }
            for g in generators {
                let y = self.add(&x, g);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }
}

/// Partitions an enumerated subgroup into cosets of the subgroup generated by
/// `subgroup_gens`. Returns a class id per element; ids are numbered in order
/// of first appearance.
pub fn coset_partition(
    group: &FiniteAbelianGroup,
    elements: &[GroupElement],
    subgroup_gens: &[GroupElement],
) -> Result<Vec<usize>> {
    let index: HashMap<&GroupElement, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut parent: Vec<usize> = (0..elements.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, e) in elements.iter().enumerate() {
        for h in subgroup_gens {
            let f = group.add(e, h);
            let Some(&j) = index.get(&f) else {
                return Err(Error::InvalidInput(format!(
                    "{h} does not preserve the enumerated set"
                )));
            };
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::with_capacity(elements.len());
    for i in 0..elements.len() {
        let r = find(&mut parent, i);
        let next = class_of_root.len();
        out.push(*class_of_root.entry(r).or_insert(next));
    }
    Ok(out)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl fmt::Display for FiniteAbelianGroup {
    /// Writes `Z2xZ4`, or `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Parses `Z2`, `Z2xZ2`, `z4 x z3`, or `0` for the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_lowercase();
        if t == "0" || t == "1" {
            return Ok(FiniteAbelianGroup::trivial());
        }
        if t.is_empty() {
            return Err(Error::parse(0, "empty group literal"));
        }
        let mut orders = Vec::new();
        let mut pos = 0;
        for part in t.split('x') {
            let digits = part.strip_prefix('z').ok_or_else(|| {
                Error::parse(
                    pos,
                    format!("expected 'Z<n>' in group literal, found '{part}'"),
                )
            })?;
            let n: u64 = digits
                .parse()
                .map_err(|_| Error::parse(pos + 1, format!("invalid cyclic order '{digits}'")))?;
            if n < 2 {
                return Err(Error::parse(
                    pos + 1,
                    format!("cyclic order must be at least 2, got {n}"),
                ));
            }
            orders.push(n);
            pos += part.len() + 1;
        }
        Ok(FiniteAbelianGroup { orders })
    }
}
