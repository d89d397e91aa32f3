//! Plain-text file formats: algebra presentations, module actions, and
//! expectation rules for report checks. The formats are line-based and
//! strict — every coordinate must already be reduced mod p, every basis
//! product must appear exactly once — and all parse errors carry the
//! offending line number. Parsing then serializing then parsing again
//! yields identical structures.
//!
//! Algebra files:
//!
//! ```text
//! algebra f2x2 p=2 dim=2
//! basis 1 x
//! unit 1 0
//! mul 0 0 : 1 0
//! mul 0 1 : 0 1
//! mul 1 0 : 0 1
//! mul 1 1 : 0 0
//! ```
//!
//! Module files reference the algebra by name and list one `act i` block
//! (an m×m matrix, row-vector right-action convention) per basis element:
//!
//! ```text
//! module nat over m2f2 dim=2
//! act 0
//! 1 0
//! 0 0
//! ...
//! ```
//!
//! Expectation files carry one rule per line, `<glob-pattern> <status>`,
//! matched against check names; `#` starts a comment in all three formats.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::AlgebraPresentation;
use crate::field::PrimeField;
use crate::mat::Mat;
use crate::module::{ModuleError, ModuleRep};

/// A parse failure, pointing at the line that caused it (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

/// Lines with content: comments stripped, blanks skipped, 1-based numbers.
fn content_lines(src: &str) -> Vec<(usize, Vec<&str>)> {
    src.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let stripped = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let tokens: Vec<&str> = stripped.split_whitespace().collect();
            if tokens.is_empty() {
                None
            } else {
                Some((i + 1, tokens))
            }
        })
        .collect()
}

fn parse_key_value(token: &str, key: &str, line: usize) -> Result<u64, ParseError> {
    let rest = token
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or(ParseError { line, msg: format!("expected `{key}=<number>`, found `{token}`") })?;
    rest.parse::<u64>()
        .map_err(|_| ParseError { line, msg: format!("`{rest}` is not a number") })
}

fn parse_coords(
    tokens: &[&str],
    expected: usize,
    p: u64,
    line: usize,
) -> Result<Vec<u64>, ParseError> {
    if tokens.len() != expected {
        return err(line, format!("expected {expected} coordinates, found {}", tokens.len()));
    }
    tokens
        .iter()
        .map(|t| {
            let v = t
                .parse::<u64>()
                .map_err(|_| ParseError { line, msg: format!("`{t}` is not a coordinate") })?;
            if v >= p {
                return err(line, format!("coordinate {v} is not reduced mod {p}"));
            }
            Ok(v)
        })
        .collect()
}

/// A parsed algebra file: the presentation plus the source line of every
/// `mul i j` entry, so later semantic errors can cite their origin.
#[derive(Debug, Clone)]
pub struct ParsedAlgebra {
    pub presentation: AlgebraPresentation,
    /// `mul_lines[(i, j)]` = line number of the product entry.
    pub mul_lines: BTreeMap<(usize, usize), usize>,
}

pub fn parse_algebra(src: &str) -> Result<ParsedAlgebra, ParseError> {
    let lines = content_lines(src);
    let mut it = lines.iter();

    let (hline, header) = match it.next() {
        Some((l, t)) => (*l, t),
        None => return err(1, "empty file: expected `algebra <name> p=<prime> dim=<n>`"),
    };
    if header[0] != "algebra" || header.len() != 4 {
        return err(hline, "expected header `algebra <name> p=<prime> dim=<n>`");
    }
    let name = header[1].to_string();
    let p = parse_key_value(header[2], "p", hline)?;
    let dim = parse_key_value(header[3], "dim", hline)? as usize;
    let field = match PrimeField::new(p) {
        Ok(f) => f,
        Err(_) => return err(hline, format!("{p} is not a prime")),
    };
    if dim == 0 {
        return err(hline, "dim must be at least 1");
    }

    let mut rest = it.clone().peekable();
    let basis_names = match rest.peek() {
        Some((l, t)) if t[0] == "basis" => {
            let (l, t) = rest.next().unwrap();
            it.next();
            if t.len() != dim + 1 {
                return err(*l, format!("expected {dim} basis labels, found {}", t.len() - 1));
            }
            let _ = l;
            t[1..].iter().map(|s| s.to_string()).collect()
        }
        _ => AlgebraPresentation::default_basis_names(dim),
    };

    let (uline, unit_tokens) = match it.next() {
        Some((l, t)) => (*l, t),
        None => return err(hline, "missing `unit` line"),
    };
    if unit_tokens[0] != "unit" {
        return err(uline, format!("expected `unit <{dim} coords>`, found `{}`", unit_tokens[0]));
    }
    let unit = parse_coords(&unit_tokens[1..], dim, p, uline)?;

    let mut table = vec![vec![vec![0u64; dim]; dim]; dim];
    let mut mul_lines = BTreeMap::new();
    for (l, t) in it {
        if t[0] != "mul" {
            return err(*l, format!("expected `mul i j : <coords>`, found `{}`", t[0]));
        }
        if t.len() != 4 + dim || t[3] != ":" {
            return err(*l, format!("expected `mul i j : <{dim} coords>`"));
        }
        let parse_idx = |s: &str| -> Result<usize, ParseError> {
            let v = s
                .parse::<usize>()
                .map_err(|_| ParseError { line: *l, msg: format!("`{s}` is not an index") })?;
            if v >= dim {
                return err(*l, format!("index {v} out of range (dim = {dim})"));
            }
            Ok(v)
        };
        let i = parse_idx(t[1])?;
        let j = parse_idx(t[2])?;
        if let Some(first) = mul_lines.get(&(i, j)) {
            return err(*l, format!("duplicate entry mul {i} {j} (first at line {first})"));
        }
        table[i][j] = parse_coords(&t[4..], dim, p, *l)?;
        mul_lines.insert((i, j), *l);
    }
    if mul_lines.len() != dim * dim {
        let missing = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .find(|k| !mul_lines.contains_key(k))
            .expect("some pair is missing");
        let last = mul_lines.values().max().copied().unwrap_or(uline);
        return err(last, format!("missing entry mul {} {}", missing.0, missing.1));
    }

    Ok(ParsedAlgebra {
        presentation: AlgebraPresentation::new(field, name, basis_names, unit, &table),
        mul_lines,
    })
}

pub fn serialize_algebra(pres: &AlgebraPresentation) -> String {
    let n = pres.dim();
    let mut out = String::new();
    out.push_str(&format!("algebra {} p={} dim={}\n", pres.name(), pres.field().modulus(), n));
    out.push_str(&format!("basis {}\n", pres.basis_names().join(" ")));
    out.push_str(&format!("unit {}\n", join_coords(pres.unit())));
    for i in 0..n {
        for j in 0..n {
            out.push_str(&format!("mul {i} {j} : {}\n", join_coords(pres.basis_product(i, j))));
        }
    }
    out
}

fn join_coords(v: &[u64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// A parsed module file: raw action matrices, not yet checked against the
/// algebra's relations (that is a semantic validation step, not parsing).
#[derive(Debug, Clone)]
pub struct ParsedModule {
    pub name: String,
    pub dim: usize,
    pub action: Vec<Mat>,
    pub header_line: usize,
}

impl ParsedModule {
    /// Check the module axioms and build the verified representation.
    pub fn build(&self, algebra: &Arc<AlgebraPresentation>) -> Result<ModuleRep, Vec<ModuleError>> {
        ModuleRep::new(Arc::clone(algebra), self.name.clone(), self.action.clone())
    }
}

pub fn parse_module(
    src: &str,
    algebra: &AlgebraPresentation,
) -> Result<ParsedModule, ParseError> {
    let lines = content_lines(src);
    let mut it = lines.iter();
    let p = algebra.field().modulus();
    let n = algebra.dim();

    let (hline, header) = match it.next() {
        Some((l, t)) => (*l, t),
        None => return err(1, "empty file: expected `module <name> over <algebra> dim=<m>`"),
    };
    if header[0] != "module" || header.len() != 5 || header[2] != "over" {
        return err(hline, "expected header `module <name> over <algebra> dim=<m>`");
    }
    let name = header[1].to_string();
    if header[3] != algebra.name() {
        return err(
            hline,
            format!("module is over `{}`, but the algebra is `{}`", header[3], algebra.name()),
        );
    }
    let m = parse_key_value(header[4], "dim", hline)? as usize;
    if m == 0 {
        return err(hline, "module dim must be at least 1");
    }

    let mut action: Vec<Option<Mat>> = vec![None; n];
    loop {
        let (aline, act) = match it.next() {
            Some((l, t)) => (*l, t),
            None => break,
        };
        if act[0] != "act" || act.len() != 2 {
            return err(aline, "expected `act <i>`");
        }
        let i = act[1]
            .parse::<usize>()
            .map_err(|_| ParseError { line: aline, msg: format!("`{}` is not an index", act[1]) })?;
        if i >= n {
            return err(aline, format!("index {i} out of range (algebra dim = {n})"));
        }
        if action[i].is_some() {
            return err(aline, format!("duplicate block `act {i}`"));
        }
        let mut rows = Vec::with_capacity(m);
        for _ in 0..m {
            let (rline, row) = match it.next() {
                Some((l, t)) => (*l, t),
                None => return err(aline, format!("block `act {i}` needs {m} rows")),
            };
            rows.push(parse_coords(row, m, p, rline)?);
        }
        action[i] = Some(Mat::from_rows(algebra.field(), &rows));
    }
    let mut mats = Vec::with_capacity(n);
    for (i, slot) in action.into_iter().enumerate() {
        match slot {
            Some(mat) => mats.push(mat),
            None => {
                let last = lines.last().map(|(l, _)| *l).unwrap_or(hline);
                return err(last, format!("missing block `act {i}`"));
            }
        }
    }
    Ok(ParsedModule { name, dim: m, action: mats, header_line: hline })
}

pub fn serialize_module(module: &ModuleRep) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "module {} over {} dim={}\n",
        module.name(),
        module.algebra().name(),
        module.dim()
    ));
    for (i, mat) in module.action().iter().enumerate() {
        out.push_str(&format!("act {i}\n"));
        for r in 0..mat.rows() {
            out.push_str(&join_coords(mat.row(r)));
            out.push('\n');
        }
    }
    out
}

/// One expectation rule: a glob pattern over check names and the status
/// those checks are expected to have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectRule {
    pub pattern: String,
    pub status: String,
}

pub fn parse_expect(src: &str) -> Result<Vec<ExpectRule>, ParseError> {
    content_lines(src)
        .iter()
        .map(|(l, t)| {
            if t.len() != 2 {
                return err(*l, "expected `<pattern> <status>`");
            }
            let status = t[1].to_string();
            if !matches!(status.as_str(), "pass" | "fail" | "skipped") {
                return err(*l, format!("unknown status `{status}`"));
            }
            Ok(ExpectRule { pattern: t[0].to_string(), status })
        })
        .collect()
}

/// Glob matching with `*` (any substring) only.
pub fn glob_match(pattern: &str, name: &str) -> bool {
    let parts: Vec<&str> = pattern.split('*').collect();
    if parts.len() == 1 {
        return pattern == name;
    }
    let mut pos = 0;
    for (k, part) in parts.iter().enumerate() {
        if part.is_empty() {
            continue;
        }
        if k == 0 {
            if !name.starts_with(part) {
                return false;
            }
            pos = part.len();
        } else if k == parts.len() - 1 {
            return name.len() >= pos && name[pos..].ends_with(part);
        } else {
            match name[pos..].find(part) {
                Some(at) => pos += at + part.len(),
                None => return false,
            }
        }
    }
    // pattern ends with `*`
    true
}
