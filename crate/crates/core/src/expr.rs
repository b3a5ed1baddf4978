//! Process words in the free group on the operators, and phase expressions in
//! `E = Z^(S × A)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use exstat_linalg::{Integer, SparseVec};

use crate::error::{Error, Result};
use crate::model::ExcitationModel;

/// Longest word the parser will build.
pub const MAX_WORD_LEN: usize = 10_000_000;

/// An element of the free group on the operators, kept as written.
/// The rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProcessWord {
    pub letters: Vec<(usize, i32)>,
}

impl ProcessWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn letter(s: usize) -> Self {
        ProcessWord {
            letters: vec![(s, 1)],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        ProcessWord {
            letters: self.letters.iter().rev().map(|&(s, e)| (s, -e)).collect(),
        }
    }

    /// `self * other`: `other` acts first.
    pub fn then(&self, other: &ProcessWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        ProcessWord { letters }
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let k = n.unsigned_abs() as usize;
        if base.len().saturating_mul(k) > MAX_WORD_LEN {
            return Err(Error::InvalidInput(format!(
                "word longer than {MAX_WORD_LEN} letters"
            )));
        }
        let mut letters = Vec::with_capacity(base.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&base.letters);
        }
        Ok(ProcessWord { letters })
    }

    /// The commutator `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &ProcessWord, b: &ProcessWord) -> Self {
        a.inverse().then(&b.inverse()).then(a).then(b)
    }

    /// Writes the word with model labels, e.g. `U[0,1] U[0,2]^-1`.
    pub fn display(&self, m: &ExcitationModel) -> String {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(s, e)| {
                let l = &m.operator(s).label;
                if e == 1 {
                    l.clone()
                } else {
                    format!("{l}^{e}")
                }
            })
            .collect();
        parts.join(" ")
    }

    /// The configuration `∂g`.
    pub fn boundary(&self, m: &ExcitationModel) -> usize {
        let mut c = 0;
        for &(s, e) in self.letters.iter().rev() {
            c = if e > 0 {
                m.step(s, c)
            } else {
                m.step_back(s, c)
            };
        }
        c
    }
}

/// Parses a process word. Grammar:
/// `process := term {('*'|ws) term}`, `term := atom ['^' int]`,
/// `atom := label | '(' process ')' | '[' process ',' process ']'`.
pub fn parse_process(text: &str, m: &ExcitationModel) -> Result<ProcessWord> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        model: m,
    };
    let w = p.process()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(Error::parse(
            p.pos,
            format!("unexpected '{}'", p.src[p.pos] as char),
        ));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    model: &'a ExcitationModel,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn process(&mut self) -> Result<ProcessWord> {
        let mut w = ProcessWord::new();
        let mut any = false;
        loop {
            match self.peek() {
                Some(b'*') if any => {
                    self.pos += 1;
                    any = false;
                }
                Some(c) if c == b'(' || c == b'[' || is_ident_start(c) => {
                    any = true;
                    let t = self.term()?;
                    w = w.then(&t);
                    if w.len() > MAX_WORD_LEN {
                        return Err(Error::parse(
                            self.pos,
                            format!("word longer than {MAX_WORD_LEN} letters"),
                        ));
                    }
                }
                _ => return Ok(w),
            }
        }
    }

    fn term(&mut self) -> Result<ProcessWord> {
        let start = self.pos;
        let a = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.int()?;
            return a.pow(n).map_err(|e| Error::parse(start, e.to_string()));
        }
        Ok(a)
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        s.parse()
            .map_err(|_| Error::parse(start, "expected an integer exponent"))
    }

    fn atom(&mut self) -> Result<ProcessWord> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.process()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.process()?;
                self.expect(b',')?;
                let b = self.process()?;
                self.expect(b']')?;
                Ok(ProcessWord::commutator(&a, &b))
            }
            Some(c) if is_ident_start(c) => {
                let label = self.label();
                match self.model.operator_by_label(label) {
                    Some(s) => Ok(ProcessWord::letter(s)),
                    None => Err(Error::parse(start, format!("unknown operator '{label}'"))),
                }
            }
            Some(c) => Err(Error::parse(
                self.pos,
                format!("unexpected '{}'", c as char),
            )),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    /// An identifier, plus an attached `[...]` if it holds only digits and
    /// separators (as in `U[0,1;2]`).
    fn label(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && is_ident_char(self.src[self.pos]) {
            self.pos += 1;
        }
        if self.src.get(self.pos) == Some(&b'[') {
            if let Some(len) = self.src[self.pos + 1..].iter().position(|&c| c == b']') {
                let inner = &self.src[self.pos + 1..self.pos + 1 + len];
                if inner
                    .iter()
                    .all(|c| c.is_ascii_digit() || b",; -".contains(c))
                {
                    self.pos += len + 2;
                }
            }
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' || c == b'.'
}

/// A sparse element of `E`, keyed by `(operator, configuration)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Expression {
    terms: BTreeMap<(usize, usize), i64>,
}

impl Expression {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis element `θ(s, a)`.
    pub fn theta(s: usize, a: usize) -> Self {
        let mut e = Self::zero();
        e.add_term(s, a, 1);
        e
    }

    pub fn add_term(&mut self, s: usize, a: usize, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry((s, a)).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&(s, a));
        }
    }

    pub fn coeff(&self, s: usize, a: usize) -> i64 {
        self.terms.get(&(s, a)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.terms.iter().map(|(&(s, a), &c)| (s, a, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Expression) -> Expression {
        self.add_scaled(1, other)
    }

    pub fn sub(&self, other: &Expression) -> Expression {
        self.add_scaled(-1, other)
    }

    pub fn add_scaled(&self, k: i64, other: &Expression) -> Expression {
        let mut out = self.clone();
        for (s, a, c) in other.terms() {
            out.add_term(s, a, k * c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Expression {
        let mut out = Expression::zero();
        for (s, a, c) in self.terms() {
            out.add_term(s, a, k * c);
        }
        out
    }

    /// Sum of absolute values of the coefficients.
    pub fn norm1(&self) -> i64 {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Whether any term uses operator `s`.
    pub fn uses_operator(&self, s: usize) -> bool {
        self.terms.keys().any(|&(t, _)| t == s)
    }

    /// Dense coordinates `s * |A| + a`.
    pub fn to_sparse(&self, m: &ExcitationModel) -> SparseVec {
        SparseVec::from_pairs(
            self.terms()
                .map(|(s, a, c)| (m.term_index(s, a), Integer::from(c))),
        )
    }

    pub fn from_sparse(v: &SparseVec, m: &ExcitationModel) -> Result<Expression> {
        let mut e = Expression::zero();
        for (i, c) in v.iter() {
            if *i >= m.expression_dim() {
                return Err(Error::InvalidInput(format!(
                    "coordinate {i} outside the expression group"
                )));
            }
            let c = c.to_i64().ok_or_else(|| {
                Error::ResourceLimit("expression coefficient does not fit in 64 bits".into())
            })?;
            let (s, a) = m.term_of_index(*i);
            e.add_term(s, a, c);
        }
        Ok(e)
    }

    /// The graph boundary: each `c θ(s, a)` contributes `+c` at `a + ∂s` and
    /// `-c` at `a`.
    pub fn boundary(&self, m: &ExcitationModel) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for (s, a, c) in self.terms() {
            *out.entry(m.step(s, a)).or_insert(0) += c;
            *out.entry(a).or_insert(0) -= c;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    pub fn is_closed(&self, m: &ExcitationModel) -> bool {
        self.boundary(m).is_empty()
    }

    /// `δ_b`: shifts every configuration by `b`.
    pub fn translate(&self, m: &ExcitationModel, b: usize) -> Expression {
        let mut out = Expression::zero();
        for (s, a, c) in self.terms() {
            out.add_term(s, m.config_add(a, b), c);
        }
        out
    }

    /// Restriction to the quotient model on `keep`: terms on other operators
    /// are dropped and configurations map to their classes.
    pub fn restrict(
        &self,
        m: &ExcitationModel,
        keep: &[usize],
    ) -> Result<(ExcitationModel, Expression)> {
        let (q, proj) = m.quotient_model(keep)?;
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut out = Expression::zero();
        for (s, a, c) in self.terms() {
            if let Ok(i) = sorted.binary_search(&s) {
                out.add_term(i, proj[a], c);
            }
        }
        Ok((q, out))
    }

    /// Writes the text form: one `<coeff> <label> @ [residues]` line per term.
    pub fn to_text(&self, m: &ExcitationModel) -> String {
        let mut out = String::new();
        for (s, a, c) in self.terms() {
            let _ = writeln!(out, "{c} {} @ {}", m.operator(s).label, m.config_rep(a));
        }
        out
    }

    /// Parses the text form. Blank lines and `#` comments are ignored;
    /// repeated terms are summed.
    pub fn parse(text: &str, m: &ExcitationModel) -> Result<Expression> {
        let mut e = Expression::zero();
        let mut offset = 0;
        for (n, raw) in text.split_inclusive('\n').enumerate() {
            let line_start = offset;
            offset += raw.len();
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::parse(line_start, format!("line {}: {msg}", n + 1));
            let (lhs, rhs) = line
                .split_once('@')
                .ok_or_else(|| err("expected '<coeff> <label> @ [config]'".into()))?;
            let mut it = lhs.split_whitespace();
            let coeff: i64 = it
                .next()
                .and_then(|c| c.parse().ok())
                .ok_or_else(|| err("expected an integer coefficient".into()))?;
            let label = it
                .next()
                .ok_or_else(|| err("missing operator label".into()))?;
            if it.next().is_some() {
                return Err(err("unexpected text before '@'".into()));
            }
            let s = m
                .operator_by_label(label)
                .ok_or_else(|| err(format!("unknown operator '{label}'")))?;
            let a = parse_config(rhs.trim(), m).map_err(|e| err(e.to_string()))?;
            e.add_term(s, a, coeff);
        }
        Ok(e)
    }
}

/// Parses a configuration written as `[r1,r2,...]` residues in the ambient group.
pub fn parse_config(text: &str, m: &ExcitationModel) -> Result<usize> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse(0, format!("expected '[r1,...,rk]', found '{text}'")))?;
    let values: Vec<i64> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|v| {
                v.trim()
                    .parse()
                    .map_err(|_| Error::parse(0, format!("invalid residue '{}'", v.trim())))
            })
            .collect::<Result<_>>()?
    };
    let g = m.ambient().element(&values)?;
    m.config_of(&g)
        .ok_or_else(|| Error::InvalidInput(format!("{g} is not a configuration of the model")))
}

/// `θ(g, a)` together with the final configuration `a + ∂g`.
/// Uses `θ(g₁g₂, a) = θ(g₂, a) + θ(g₁, a + ∂g₂)` and `θ(s⁻¹, a) = -θ(s, a - ∂s)`.
pub fn expand_theta(m: &ExcitationModel, g: &ProcessWord, a: usize) -> (Expression, usize) {
    let mut e = Expression::zero();
    let mut c = a;
    for &(s, exp) in g.letters.iter().rev() {
        for _ in 0..exp.unsigned_abs() {
            if exp > 0 {
                e.add_term(s, c, 1);
                c = m.step(s, c);
            } else {
                c = m.step_back(s, c);
                e.add_term(s, c, -1);
            }
        }
    }
    (e, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{builtin, Geometry};

    fn triangle() -> ExcitationModel {
        let b = builtin("triangle", None).unwrap();
        let Geometry::Simplicial(c) = b.geometry else {
            unreachable!()
        };
        ExcitationModel::from_simplicial(&c, &"Z2".parse().unwrap(), 0, None).unwrap()
    }

    #[test]
    fn desugars_commutators_and_powers() {
        let m = triangle();
        let w = parse_process("[U2, U1^2]", &m).unwrap();
        assert_eq!(
            w.letters,
            vec![(1, -1), (0, -1), (0, -1), (1, 1), (0, 1), (0, 1)]
        );
        assert!(parse_process("U1^0", &m).unwrap().is_empty());
        assert_eq!(parse_process("[U3,[U2,U1]]", &m).unwrap().len(), 10);
        assert_eq!(
            parse_process("U[0,1] * U[1,2]^-1", &m).unwrap().letters,
            vec![(0, 1), (2, -1)]
        );
        assert_eq!(
            parse_process("(U1 U2)^-1", &m).unwrap().letters,
            vec![(1, -1), (0, -1)]
        );
    }

    #[test]
    fn reports_parse_errors() {
        let m = triangle();
        assert!(matches!(
            parse_process("U9", &m),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            parse_process("[U1 U2]", &m),
            Err(Error::Parse { pos: 6, .. })
        ));
        assert!(parse_process("U1^", &m).is_err());
        assert!(parse_process("(U1", &m).is_err());
    }

    #[test]
    fn f_symbol_expansion() {
        let m = triangle();
        let w = parse_process("[U2, U1^2]", &m).unwrap();
        let (e, end) = expand_theta(&m, &w, 0);
        assert_eq!(end, 0);
        let d1 = m.boundary_config(0);
        let d2 = m.boundary_config(1);
        let mut want = Expression::zero();
        want.add_term(0, 0, 1);
        want.add_term(0, d1, 1);
        want.add_term(0, d2, -1);
        want.add_term(0, m.config_add(d1, d2), -1);
        assert_eq!(e, want);
        assert!(e.is_closed(&m));
        assert_eq!(e.norm1(), 4);
        let (_, r) = e.restrict(&m, &[0, 1]).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn text_round_trip() {
        let m = triangle();
        let (e, _) = expand_theta(&m, &parse_process("[U2, U1^2]", &m).unwrap(), 0);
        let back = Expression::parse(&e.to_text(&m), &m).unwrap();
        assert_eq!(back, e);
        assert!(Expression::parse("1 U1 @ [1,0,0]", &m).is_err());
        assert!(Expression::parse("x U1 @ [0,0,0]", &m).is_err());
    }
}
