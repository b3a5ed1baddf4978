//! The line-oriented model file format.
//!
//! ```text
//! [group]      invariants = 2,2
//! [complex]    vertices = 4
//!              maximal = 0 1 2 | 0 1 3 | 0 2 3 | 1 2 3
//! [excitation] p = 1
//!              generators = standard
//! ```
//!
//! `[subcomplex]` (with `maximal`) turns a simplicial model into the relative
//! model. `[graph]` with `vertices`, `edges = u v | ...` and
//! `crossings = i j | ...` describes a planar graph with crossings instead of
//! a complex. `[abstract]` lists operators directly as
//! `label ; boundary residues ; support points`, with an optional
//! `points = n`; the boundary lives in the `[group]`.

use std::collections::BTreeMap;
use std::fmt;

use exstat::{
    EmbeddedGraph, ExcitationModel, FiniteAbelianGroup, GroupElement, Operator, SimplicialComplex,
};

/// A malformed model or expression input, located by line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.msg)
        } else {
            write!(f, "line {}: {}", self.line, self.msg)
        }
    }
}

impl std::error::Error for InputError {}

/// Failure to load a model file: malformed input, or a model that cannot be built.
#[derive(Debug)]
pub enum ModelFileError {
    Input(InputError),
    Build(exstat::Error),
}

impl fmt::Display for ModelFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelFileError::Input(e) => write!(f, "{e}"),
            ModelFileError::Build(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ModelFileError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            ModelFileError::Input(e) => Some(e),
            ModelFileError::Build(e) => Some(e),
        }
    }
}

impl From<InputError> for ModelFileError {
    fn from(e: InputError) -> Self {
        ModelFileError::Input(e)
    }
}

fn err(line: usize, msg: impl Into<String>) -> InputError {
    InputError {
        line,
        msg: msg.into(),
    }
}

#[derive(Debug, Default)]
struct Section {
    line: usize,
    keys: BTreeMap<String, (usize, String)>,
    rows: Vec<(usize, String)>,
}

impl Section {
    fn get(&self, key: &str) -> Option<(usize, &str)> {
        self.keys.get(key).map(|(l, v)| (*l, v.as_str()))
    }

    fn require(&self, name: &str, key: &str) -> Result<(usize, &str), InputError> {
        self.get(key)
            .ok_or_else(|| err(self.line, format!("section [{name}] needs '{key}'")))
    }
}

const SECTIONS: &[&str] = &[
    "group",
    "complex",
    "subcomplex",
    "excitation",
    "abstract",
    "graph",
];

fn split_sections(text: &str) -> Result<BTreeMap<String, Section>, InputError> {
    let mut sections: BTreeMap<String, Section> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let mut line = raw.split('#').next().unwrap_or("").trim();
        if let Some(rest) = line.strip_prefix('[') {
            let (name, tail) = rest
                .split_once(']')
                .ok_or_else(|| err(n, "unterminated section header"))?;
            let name = name.trim().to_ascii_lowercase();
            if !SECTIONS.contains(&name.as_str()) {
                return Err(err(n, format!("unknown section [{name}]")));
            }
            if sections.contains_key(&name) {
                return Err(err(n, format!("section [{name}] appears twice")));
            }
            sections.insert(
                name.clone(),
                Section {
                    line: n,
                    ..Section::default()
                },
            );
            current = Some(name);
            line = tail.trim();
        }
        if line.is_empty() {
            continue;
        }
        let name = current
            .as_ref()
            .ok_or_else(|| err(n, "content before the first section"))?;
        let sec = sections.get_mut(name).expect("section exists");
        if name == "abstract" && line.contains(';') {
            sec.rows.push((n, line.to_string()));
        } else if let Some((k, v)) = line.split_once('=') {
            let k = k.trim().to_ascii_lowercase();
            if sec
                .keys
                .insert(k.clone(), (n, v.trim().to_string()))
                .is_some()
            {
                return Err(err(n, format!("key '{k}' repeated in [{name}]")));
            }
        } else {
            return Err(err(n, format!("expected 'key = value' in [{name}]")));
        }
    }
    Ok(sections)
}

fn parse_ints<T: std::str::FromStr>(line: usize, text: &str) -> Result<Vec<T>, InputError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| err(line, format!("invalid integer '{t}'")))
        })
        .collect()
}

fn parse_lists(line: usize, text: &str) -> Result<Vec<Vec<usize>>, InputError> {
    text.split('|')
        .map(|part| parse_ints(line, part))
        .filter(|r| r.as_ref().map_or(true, |v| !v.is_empty()))
        .collect()
}

fn group_of(sections: &BTreeMap<String, Section>) -> Result<FiniteAbelianGroup, InputError> {
    let sec = sections
        .get("group")
        .ok_or_else(|| err(0, "missing [group] section"))?;
    if let Some((l, v)) = sec.get("invariants") {
        let orders: Vec<u64> = parse_ints(l, v)?;
        FiniteAbelianGroup::new(orders).map_err(|e| err(l, e.to_string()))
    } else {
        let (l, v) = sec.require("group", "name")?;
        v.parse().map_err(|e: exstat::Error| err(l, e.to_string()))
    }
}

/// Parses a generating-set literal: `standard`, or residue lists separated by `|`.
pub fn parse_generators(
    group: &FiniteAbelianGroup,
    line: usize,
    text: &str,
) -> Result<Option<Vec<GroupElement>>, InputError> {
    if text.trim().eq_ignore_ascii_case("standard") {
        return Ok(None);
    }
    let lists: Vec<Vec<i64>> = text
        .split('|')
        .map(|p| parse_ints(line, p))
        .collect::<Result<_, _>>()?;
    let gens = lists
        .iter()
        .map(|v| group.element(v).map_err(|e| err(line, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if gens.is_empty() {
        return Err(err(line, "empty generating set"));
    }
    Ok(Some(gens))
}

fn complex_of(
    sec: &Section,
    name: &str,
    vertices: Option<usize>,
) -> Result<SimplicialComplex, InputError> {
    let n = match (sec.get("vertices"), vertices) {
        (Some((l, v)), _) => v
            .trim()
            .parse()
            .map_err(|_| err(l, format!("invalid vertex count '{v}'")))?,
        (None, Some(n)) => n,
        (None, None) => return Err(err(sec.line, format!("section [{name}] needs 'vertices'"))),
    };
    let (l, v) = sec.require(name, "maximal")?;
    SimplicialComplex::from_maximal(n, &parse_lists(l, v)?).map_err(|e| err(l, e.to_string()))
}

/// Builds the model described by a model file.
pub fn parse_model(text: &str) -> Result<ExcitationModel, ModelFileError> {
    let sections = split_sections(text)?;
    let group = group_of(&sections)?;
    let build_err = ModelFileError::Build;
    if let Some(sec) = sections.get("abstract") {
        let mut ops = Vec::new();
        for (l, row) in &sec.rows {
            let parts: Vec<&str> = row.split(';').map(str::trim).collect();
            if parts.len() != 3 || parts[0].is_empty() {
                return Err(
                    err(*l, "expected 'label ; boundary residues ; support points'").into(),
                );
            }
            let boundary = group
                .element(&parse_ints::<i64>(*l, parts[1])?)
                .map_err(|e| err(*l, e.to_string()))?;
            let support: Vec<usize> = parse_ints(*l, parts[2])?;
            ops.push(Operator {
                label: parts[0].to_string(),
                boundary,
                support,
            });
        }
        let points = match sec.get("points") {
            Some((l, v)) => v
                .trim()
                .parse()
                .map_err(|_| err(l, format!("invalid point count '{v}'")))?,
            None => ops
                .iter()
                .flat_map(|o| o.support.iter().map(|p| p + 1))
                .max()
                .unwrap_or(0),
        };
        return ExcitationModel::from_explicit(group, ops, points).map_err(build_err);
    }
    let exc = sections.get("excitation");
    let gens = match exc.and_then(|s| s.get("generators")) {
        Some((l, v)) => parse_generators(&group, l, v)?,
        None => None,
    };
    if let Some(sec) = sections.get("graph") {
        let (l, v) = sec.require("graph", "vertices")?;
        let vertex_count = v
            .trim()
            .parse()
            .map_err(|_| err(l, format!("invalid vertex count '{v}'")))?;
        let pairs = |key: &str| -> Result<Vec<(usize, usize)>, InputError> {
            match sec.get(key) {
                None => Ok(Vec::new()),
                Some((l, v)) => parse_lists(l, v)?
                    .into_iter()
                    .map(|p| match p[..] {
                        [a, b] => Ok((a, b)),
                        _ => Err(err(l, format!("'{key}' entries must be pairs"))),
                    })
                    .collect(),
            }
        };
        let graph = EmbeddedGraph {
            vertex_count,
            edges: pairs("edges")?,
            crossings: pairs("crossings")?,
        };
        return ExcitationModel::from_embedded_graph(&graph, &group, gens.as_deref())
            .map_err(build_err);
    }
    let csec = sections
        .get("complex")
        .ok_or_else(|| err(0, "missing [complex], [graph] or [abstract] section"))?;
    let complex = complex_of(csec, "complex", None)?;
    let exc = exc.ok_or_else(|| err(0, "missing [excitation] section"))?;
    let (l, v) = exc.require("excitation", "p")?;
    let p: i32 = v
        .trim()
        .parse()
        .map_err(|_| err(l, format!("invalid excitation dimension '{v}'")))?;
    match sections.get("subcomplex") {
        Some(sub) => {
            let sub = complex_of(sub, "subcomplex", Some(complex.vertex_count()))?;
            ExcitationModel::relative(&complex, &sub, &group, p, gens.as_deref()).map_err(build_err)
        }
        None => ExcitationModel::from_simplicial(&complex, &group, p, gens.as_deref())
            .map_err(build_err),
    }
}
