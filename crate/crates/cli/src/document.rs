//! Line-oriented algebra files.
//!
//! ```text
//! # comment
//! [algebra]
//! dim 2
//!
//! [pi1]
//! 1 2 2 1        # [e1,e2] = e2, 1-based, i < j
//!
//! [pi2]
//!
//! [rep]
//! module_dim 1
//! rho 1
//! row: 1
//! mu 1
//! row: 0
//!
//! [hpi1]         # brackets on the module, for nonabelian extensions
//! [hpi2]
//!
//! [op N]
//! row: 1 0
//! row: 0 0
//!
//! [cochain omega1]
//! target_dim 1
//! 1 2 1 -1/2
//! ```
//!
//! Sections after `[algebra]` may appear in any order, except that `[hpi1]`
//! and `[hpi2]` need `[rep]` first. Missing `rho`/`mu` matrices are zero.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use compat_lie_core::linalg::Matrix;
use compat_lie_core::{Cochain, CompatiblePair, Error as CoreError, LieBracket, Rational, RepPair};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at line {line}, column {column}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

/// Structure-constant entry `[e_i, e_j] = c e_k`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepBlock {
    pub module_dim: usize,
    pub rho: Vec<Matrix>,
    pub mu: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCochain {
    pub name: String,
    pub target_dim: usize,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub dim: usize,
    pub pi1: Vec<Entry>,
    pub pi2: Vec<Entry>,
    pub rep: Option<RepBlock>,
    pub hpi1: Option<Vec<Entry>>,
    pub hpi2: Option<Vec<Entry>>,
    pub ops: Vec<(String, Matrix)>,
    pub cochains: Vec<NamedCochain>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BracketTarget {
    Pi1,
    Pi2,
    Hpi1,
    Hpi2,
}

enum Section {
    None,
    Algebra,
    Bracket(BracketTarget),
    Rep,
    Op(usize),
    Cochain(usize),
}

struct Parser {
    line: usize,
    dim: Option<usize>,
    doc: Document,
    section: Section,
    rep_matrix: Option<(bool, usize, usize)>,
    seen: BTreeSet<(u8, String, usize, usize, usize)>,
    op_cols: Option<usize>,
}

fn err(message: impl Into<String>, line: usize, column: usize) -> ParseError {
    ParseError {
        message: message.into(),
        line,
        column,
    }
}

/// Optional sign, digits, optional `/digits`.
pub fn parse_rational(s: &str) -> Result<Rational, &'static str> {
    let (neg, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || den.is_some_and(|d| !digits(d)) {
        return Err("malformed rational");
    }
    let n: BigInt = num.parse().map_err(|_| "malformed rational")?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| "malformed rational")?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err("zero denominator");
    }
    let r = Rational::new(n, d);
    Ok(if neg { -r } else { r })
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((b, &s[b..pos]));
            }
        } else if start.is_none() {
            start = Some(pos);
        }
    }
    if let Some(b) = start {
        out.push((b, &s[b..]));
    }
    out.into_iter().map(|(b, t)| (s[..b].chars().count() + 1, t)).collect()
}

impl Parser {
    fn dim(&self, col: usize) -> Result<usize, ParseError> {
        self.dim.ok_or_else(|| err("section before [algebra] dim", self.line, col))
    }

    fn index(&self, tok: (usize, &str), bound: usize) -> Result<usize, ParseError> {
        let v: usize = tok.1.parse().map_err(|_| err(format!("malformed index '{}'", tok.1), self.line, tok.0))?;
        if v == 0 || v > bound {
            return Err(err(format!("index {v} out of range 1..={bound}"), self.line, tok.0));
        }
        Ok(v - 1)
    }

    fn rational(&self, tok: (usize, &str)) -> Result<Rational, ParseError> {
        parse_rational(tok.1).map_err(|m| err(m, self.line, tok.0))
    }

    fn count(&self, tok: (usize, &str)) -> Result<usize, ParseError> {
        tok.1
            .parse()
            .map_err(|_| err(format!("malformed count '{}'", tok.1), self.line, tok.0))
    }

    fn header(&mut self, name: &str, col: usize) -> Result<(), ParseError> {
        self.rep_matrix = None;
        self.op_cols = None;
        let parts: Vec<&str> = name.split_whitespace().collect();
        self.section = match parts.as_slice() {
            ["algebra"] => Section::Algebra,
            ["pi1"] => Section::Bracket(BracketTarget::Pi1),
            ["pi2"] => Section::Bracket(BracketTarget::Pi2),
            ["hpi1"] | ["hpi2"] => {
                self.dim(col)?;
                if self.doc.rep.is_none() {
                    return Err(err("[hpi1]/[hpi2] need [rep] first", self.line, col));
                }
                if parts[0] == "hpi1" {
                    self.doc.hpi1.get_or_insert_with(Vec::new);
                    Section::Bracket(BracketTarget::Hpi1)
                } else {
                    self.doc.hpi2.get_or_insert_with(Vec::new);
                    Section::Bracket(BracketTarget::Hpi2)
                }
            }
            ["rep"] => {
                let n = self.dim(col)?;
                if self.doc.rep.is_some() {
                    return Err(err("duplicate [rep] section", self.line, col));
                }
                self.doc.rep = Some(RepBlock {
                    module_dim: 0,
                    rho: vec![Matrix::zeros(0, 0); n],
                    mu: vec![Matrix::zeros(0, 0); n],
                });
                Section::Rep
            }
            ["op", op] => {
                self.dim(col)?;
                if self.doc.ops.iter().any(|(n, _)| n == op) {
                    return Err(err(format!("duplicate operator '{op}'"), self.line, col));
                }
                self.doc.ops.push((op.to_string(), Matrix::zeros(0, 0)));
                Section::Op(self.doc.ops.len() - 1)
            }
            ["cochain", c] => {
                let n = self.dim(col)?;
                if self.doc.cochains.iter().any(|x| x.name == *c) {
                    return Err(err(format!("duplicate cochain '{c}'"), self.line, col));
                }
                self.doc.cochains.push(NamedCochain {
                    name: c.to_string(),
                    target_dim: n,
                    entries: Vec::new(),
                });
                Section::Cochain(self.doc.cochains.len() - 1)
            }
            _ => return Err(err(format!("unknown section [{name}]"), self.line, col)),
        };
        Ok(())
    }

    fn entry(&mut self, toks: &[(usize, &str)], bound: usize, target: usize, tag: (u8, String)) -> Result<Entry, ParseError> {
        if toks.len() != 4 {
            return Err(err("expected 'i j k coeff'", self.line, toks[0].0));
        }
        let i = self.index(toks[0], bound)?;
        let j = self.index(toks[1], bound)?;
        let k = self.index(toks[2], target)?;
        if i >= j {
            return Err(err("entry needs i < j", self.line, toks[1].0));
        }
        let coeff = self.rational(toks[3])?;
        if !self.seen.insert((tag.0, tag.1, i, j, k)) {
            return Err(err(format!("duplicate entry {} {} {}", i + 1, j + 1, k + 1), self.line, toks[0].0));
        }
        Ok(Entry { i, j, k, coeff })
    }

    fn row(&self, toks: &[(usize, &str)], expected: Option<usize>) -> Result<Vec<Rational>, ParseError> {
        let vals: Vec<Rational> = toks[1..].iter().map(|&t| self.rational(t)).collect::<Result<_, _>>()?;
        if let Some(e) = expected {
            if vals.len() != e {
                return Err(err(format!("expected {e} entries in row, found {}", vals.len()), self.line, toks[0].0));
            }
        }
        Ok(vals)
    }

    fn content(&mut self, toks: &[(usize, &str)]) -> Result<(), ParseError> {
        let col = toks[0].0;
        match self.section {
            Section::None => Err(err("content outside any section", self.line, col)),
            Section::Algebra => {
                if toks.len() != 2 || toks[0].1 != "dim" {
                    return Err(err("expected 'dim N'", self.line, col));
                }
                if self.dim.is_some() {
                    return Err(err("duplicate dim", self.line, col));
                }
                let d = self.count(toks[1])?;
                self.dim = Some(d);
                self.doc.dim = d;
                Ok(())
            }
            Section::Bracket(t) => {
                let n = self.dim(col)?;
                let (bound, tag) = match t {
                    BracketTarget::Pi1 => (n, 0),
                    BracketTarget::Pi2 => (n, 1),
                    BracketTarget::Hpi1 => (self.doc.rep.as_ref().map_or(0, |r| r.module_dim), 2),
                    BracketTarget::Hpi2 => (self.doc.rep.as_ref().map_or(0, |r| r.module_dim), 3),
                };
                let e = self.entry(toks, bound, bound, (tag, String::new()))?;
                match t {
                    BracketTarget::Pi1 => self.doc.pi1.push(e),
                    BracketTarget::Pi2 => self.doc.pi2.push(e),
                    BracketTarget::Hpi1 => self.doc.hpi1.as_mut().expect("opened").push(e),
                    BracketTarget::Hpi2 => self.doc.hpi2.as_mut().expect("opened").push(e),
                }
                Ok(())
            }
            Section::Rep => self.rep_line(toks),
            Section::Op(idx) => {
                if toks[0].1 != "row:" {
                    return Err(err("expected 'row:'", self.line, col));
                }
                let vals = self.row(toks, self.op_cols)?;
                self.op_cols = Some(vals.len());
                let m = &mut self.doc.ops[idx].1;
                let mut rows: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
                rows.push(vals);
                *m = Matrix::from_rows(rows).expect("equal row lengths");
                Ok(())
            }
            Section::Cochain(idx) => {
                let n = self.dim(col)?;
                if toks[0].1 == "target_dim" {
                    if toks.len() != 2 || !self.doc.cochains[idx].entries.is_empty() {
                        return Err(err("'target_dim M' must come first", self.line, col));
                    }
                    self.doc.cochains[idx].target_dim = self.count(toks[1])?;
                    return Ok(());
                }
                let target = self.doc.cochains[idx].target_dim;
                let name = self.doc.cochains[idx].name.clone();
                let e = self.entry(toks, n, target, (4, name))?;
                self.doc.cochains[idx].entries.push(e);
                Ok(())
            }
        }
    }

    fn rep_line(&mut self, toks: &[(usize, &str)]) -> Result<(), ParseError> {
        let col = toks[0].0;
        let n = self.dim(col)?;
        let m = self.doc.rep.as_ref().expect("opened").module_dim;
        match toks[0].1 {
            "module_dim" => {
                if toks.len() != 2 || m != 0 || self.rep_matrix.is_some() {
                    return Err(err("'module_dim M' must come first, once", self.line, col));
                }
                let m = self.count(toks[1])?;
                let rep = self.doc.rep.as_mut().expect("opened");
                rep.module_dim = m;
                rep.rho = vec![Matrix::zeros(m, m); n];
                rep.mu = vec![Matrix::zeros(m, m); n];
                Ok(())
            }
            which @ ("rho" | "mu") => {
                if toks.len() != 2 {
                    return Err(err(format!("expected '{which} I'"), self.line, col));
                }
                if let Some((_, _, filled)) = self.rep_matrix {
                    if filled != m {
                        return Err(err("previous matrix is incomplete", self.line, col));
                    }
                }
                let x = self.index(toks[1], n)?;
                let is_rho = which == "rho";
                if !self.seen.insert((5 + is_rho as u8, String::new(), x, 0, 0)) {
                    return Err(err(format!("duplicate {which} {}", x + 1), self.line, col));
                }
                self.rep_matrix = Some((is_rho, x, 0));
                Ok(())
            }
            "row:" => {
                let Some((is_rho, x, filled)) = self.rep_matrix else {
                    return Err(err("row outside a rho/mu block", self.line, col));
                };
                if filled == m {
                    return Err(err(format!("too many rows, module_dim is {m}"), self.line, col));
                }
                let vals = self.row(toks, Some(m))?;
                let rep = self.doc.rep.as_mut().expect("opened");
                let target = if is_rho { &mut rep.rho[x] } else { &mut rep.mu[x] };
                for (c, v) in vals.into_iter().enumerate() {
                    target.set(filled, c, v);
                }
                self.rep_matrix = Some((is_rho, x, filled + 1));
                Ok(())
            }
            other => Err(err(format!("unexpected '{other}' in [rep]"), self.line, col)),
        }
    }

    fn finish_block(&self) -> Result<(), ParseError> {
        if let (Section::Rep, Some((_, _, filled))) = (&self.section, self.rep_matrix) {
            let m = self.doc.rep.as_ref().expect("opened").module_dim;
            if filled != m {
                return Err(err("matrix block is incomplete", self.line, 1));
            }
        }
        Ok(())
    }
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut p = Parser {
        line: 0,
        dim: None,
        doc: Document {
            dim: 0,
            pi1: Vec::new(),
            pi2: Vec::new(),
            rep: None,
            hpi1: None,
            hpi2: None,
            ops: Vec::new(),
            cochains: Vec::new(),
        },
        section: Section::None,
        rep_matrix: None,
        seen: BTreeSet::new(),
        op_cols: None,
    };
    for (no, raw) in text.lines().enumerate() {
        p.line = no + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = body.len() - body.trim_start().len() + 1;
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(err("unterminated section header", p.line, col));
            };
            p.finish_block()?;
            p.header(name.trim(), col)?;
            continue;
        }
        p.content(&tokens(body))?;
    }
    p.line += 1;
    p.finish_block()?;
    if p.dim.is_none() {
        return Err(err("missing [algebra] dim", p.line, 1));
    }
    Ok(p.doc)
}

fn render_entries(out: &mut String, entries: &[Entry]) {
    for e in entries {
        let _ = writeln!(out, "{} {} {} {}", e.i + 1, e.j + 1, e.k + 1, e.coeff);
    }
}

fn render_rows(out: &mut String, m: &Matrix) {
    for r in 0..m.rows() {
        out.push_str("row:");
        for v in m.row(r) {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
}

/// Canonical text; `parse(render(d)) == d`.
pub fn render(doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "[algebra]\ndim {}", doc.dim);
    out.push_str("\n[pi1]\n");
    render_entries(&mut out, &doc.pi1);
    out.push_str("\n[pi2]\n");
    render_entries(&mut out, &doc.pi2);
    if let Some(rep) = &doc.rep {
        let _ = writeln!(out, "\n[rep]\nmodule_dim {}", rep.module_dim);
        for (label, ms) in [("rho", &rep.rho), ("mu", &rep.mu)] {
            for (x, m) in ms.iter().enumerate() {
                if !m.is_zero() {
                    let _ = writeln!(out, "{label} {}", x + 1);
                    render_rows(&mut out, m);
                }
            }
        }
    }
    for (label, h) in [("hpi1", &doc.hpi1), ("hpi2", &doc.hpi2)] {
        if let Some(entries) = h {
            let _ = writeln!(out, "\n[{label}]");
            render_entries(&mut out, entries);
        }
    }
    for (name, m) in &doc.ops {
        let _ = writeln!(out, "\n[op {name}]");
        render_rows(&mut out, m);
    }
    for c in &doc.cochains {
        let _ = writeln!(out, "\n[cochain {}]\ntarget_dim {}", c.name, c.target_dim);
        render_entries(&mut out, &c.entries);
    }
    out
}

fn bracket(dim: usize, entries: &[Entry]) -> Result<LieBracket, CoreError> {
    let e: Vec<(usize, usize, usize, Rational)> = entries.iter().map(|e| (e.i, e.j, e.k, e.coeff.clone())).collect();
    LieBracket::from_constants(dim, &e)
}

impl Document {
    pub fn pi1(&self) -> LieBracket {
        bracket(self.dim, &self.pi1).expect("entries checked by the parser")
    }

    pub fn pi2(&self) -> LieBracket {
        bracket(self.dim, &self.pi2).expect("entries checked by the parser")
    }

    /// The two brackets as a pair, not validated.
    pub fn pair_unchecked(&self) -> CompatiblePair {
        CompatiblePair::new_unchecked(self.pi1(), self.pi2())
    }

    pub fn rep(&self) -> Option<RepPair> {
        self.rep
            .as_ref()
            .map(|r| RepPair::new(r.module_dim, r.rho.clone(), r.mu.clone()).expect("shapes checked by the parser"))
    }

    /// Brackets on the module, abelian where absent.
    pub fn kernel_brackets(&self) -> Option<(LieBracket, LieBracket)> {
        let m = self.rep.as_ref()?.module_dim;
        let get = |h: &Option<Vec<Entry>>| bracket(m, h.as_deref().unwrap_or(&[])).expect("entries checked by the parser");
        Some((get(&self.hpi1), get(&self.hpi2)))
    }

    pub fn op(&self, name: &str) -> Option<&Matrix> {
        self.ops.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn cochain(&self, name: &str) -> Option<Cochain> {
        let c = self.cochains.iter().find(|c| c.name == name)?;
        let mut out = Cochain::zero(2, self.dim, c.target_dim);
        for e in &c.entries {
            let mut v = out.value(&[e.i, e.j]).to_vec();
            v[e.k] = e.coeff.clone();
            out.set_value(&[e.i, e.j], &v);
        }
        Some(out)
    }
}
