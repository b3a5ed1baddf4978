//! Versioned plain-text result reports.

use std::fmt::Write as _;

use crate::modelfile::InputError;

pub const HEADER: &str = "# exstat report v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorEntry {
    pub file: String,
    pub order: String,
    pub norm: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub model: String,
    pub dim_e: usize,
    pub identity_count: usize,
    pub dim_e_inv: usize,
    pub t: String,
    pub t_f: String,
    pub generators: Vec<GeneratorEntry>,
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{HEADER}");
        let _ = writeln!(out, "model = {}", self.model);
        let _ = writeln!(out, "dim_E = {}", self.dim_e);
        let _ = writeln!(out, "identity_generators = {}", self.identity_count);
        let _ = writeln!(out, "dim_E_inv = {}", self.dim_e_inv);
        let _ = writeln!(out, "T = {}", self.t);
        let _ = writeln!(out, "T_f = {}", self.t_f);
        for (i, g) in self.generators.iter().enumerate() {
            let _ = writeln!(
                out,
                "generator.{i} = {} order={} norm={}",
                g.file, g.order, g.norm
            );
        }
        out
    }

    pub fn parse(text: &str) -> Result<Report, InputError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim() == HEADER => {}
            _ => {
                return Err(InputError {
                    line: 1,
                    msg: format!("expected '{HEADER}'"),
                })
            }
        }
        let mut r = Report {
            model: String::new(),
            dim_e: 0,
            identity_count: 0,
            dim_e_inv: 0,
            t: String::new(),
            t_f: String::new(),
            generators: Vec::new(),
        };
        for (i, line) in lines {
            let n = i + 1;
            let bad = |msg: &str| InputError {
                line: n,
                msg: msg.to_string(),
            };
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once(" = ")
                .ok_or_else(|| bad("expected 'key = value'"))?;
            let num = |v: &str| v.parse::<usize>().map_err(|_| bad("expected a count"));
            match k {
                "model" => r.model = v.to_string(),
                "dim_E" => r.dim_e = num(v)?,
                "identity_generators" => r.identity_count = num(v)?,
                "dim_E_inv" => r.dim_e_inv = num(v)?,
                "T" => r.t = v.to_string(),
                "T_f" => r.t_f = v.to_string(),
                k if k.starts_with("generator.") => {
                    let mut it = v.split_whitespace();
                    let file = it
                        .next()
                        .ok_or_else(|| bad("missing generator file"))?
                        .to_string();
                    let order = it
                        .next()
                        .and_then(|t| t.strip_prefix("order="))
                        .ok_or_else(|| bad("missing order"))?;
                    let norm = it
                        .next()
                        .and_then(|t| t.strip_prefix("norm="))
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| bad("missing norm"))?;
                    r.generators.push(GeneratorEntry {
                        file,
                        order: order.to_string(),
                        norm,
                    });
                }
                _ => return Err(bad("unknown key")),
            }
        }
        Ok(r)
    }
}
