//! Line-oriented text formats.
//!
//! A file starts with `ucnorm-<kind> v1` and continues with records:
//!
//! ```text
//! space <tag> <n> [<tuple name>]
//! matrix <name> <rows> <cols>        then one line of scalars per row
//! tuple <name> <n> <dim>             then n matrix records <name>.1 … <name>.n
//! poly <name> <n> <rows> <cols> terms <m>
//!                                    then m lines `e1 … en : <rows·cols scalars>`
//! points <name> <n> <count>          then one line of n scalars per point
//! scalars <name> <count>             then one scalar per line
//! value <name> <real>
//! int <name> <unsigned>
//! text <name> <rest of line>
//! ```
//!
//! A complex scalar is written `[re, im]` with 17 significant digits, which
//! round-trips every `f64`. Blank lines and lines starting with `#` are
//! skipped. Polynomial terms are written in graded order.

use std::fmt::Write as _;

use ucnorm::polyeval::MultiIndex;
use ucnorm::{ComplexMatrix, MatrixPolynomial, MatrixTuple, OperatorSpaceSpec, C64};

use crate::error::{CliError, CliResult};

pub const VERSION: &str = "v1";

#[derive(Debug, Clone, PartialEq)]
pub enum Record {
    Space { tag: String, n: usize, tuple: Option<String> },
    Matrix(String, ComplexMatrix),
    Tuple(String, MatrixTuple),
    Poly(String, MatrixPolynomial),
    Points(String, Vec<Vec<C64>>),
    Scalars(String, Vec<C64>),
    Value(String, f64),
    Int(String, u64),
    Text(String, String),
}

impl Record {
    fn name(&self) -> &str {
        match self {
            Record::Space { .. } => "space",
            Record::Matrix(n, _)
            | Record::Tuple(n, _)
            | Record::Poly(n, _)
            | Record::Points(n, _)
            | Record::Scalars(n, _)
            | Record::Value(n, _)
            | Record::Int(n, _)
            | Record::Text(n, _) => n,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub kind: String,
    pub records: Vec<Record>,
}

pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn scalar(z: C64) -> String {
    format!("[{}, {}]", real(z.re), real(z.im))
}

fn scalar_row<'a>(it: impl IntoIterator<Item = &'a C64>) -> String {
    it.into_iter().map(|z| scalar(*z)).collect::<Vec<_>>().join(" ")
}

fn write_matrix(out: &mut String, name: &str, m: &ComplexMatrix) {
    writeln!(out, "matrix {name} {} {}", m.nrows(), m.ncols()).unwrap();
    for i in 0..m.nrows() {
        let row: Vec<C64> = (0..m.ncols()).map(|j| m[(i, j)]).collect();
        writeln!(out, "{}", scalar_row(&row)).unwrap();
    }
}

impl Document {
    pub fn new(kind: &str) -> Self {
        Self {
            kind: kind.into(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, r: Record) -> &mut Self {
        self.records.push(r);
        self
    }

    pub fn space(&mut self, spec: &OperatorSpaceSpec) -> &mut Self {
        self.push(Record::Space {
            tag: spec.tag(),
            n: spec.n(),
            tuple: None,
        })
    }

    pub fn matrix(&mut self, name: &str, m: &ComplexMatrix) -> &mut Self {
        self.push(Record::Matrix(name.into(), m.clone()))
    }

    pub fn tuple(&mut self, name: &str, t: &MatrixTuple) -> &mut Self {
        self.push(Record::Tuple(name.into(), t.clone()))
    }

    pub fn poly(&mut self, name: &str, p: &MatrixPolynomial) -> &mut Self {
        self.push(Record::Poly(name.into(), p.clone()))
    }

    pub fn points(&mut self, name: &str, pts: &[Vec<C64>]) -> &mut Self {
        self.push(Record::Points(name.into(), pts.to_vec()))
    }

    pub fn scalars(&mut self, name: &str, v: &[C64]) -> &mut Self {
        self.push(Record::Scalars(name.into(), v.to_vec()))
    }

    pub fn value(&mut self, name: &str, x: f64) -> &mut Self {
        self.push(Record::Value(name.into(), x))
    }

    pub fn int(&mut self, name: &str, k: u64) -> &mut Self {
        self.push(Record::Int(name.into(), k))
    }

    pub fn text(&mut self, name: &str, s: &str) -> &mut Self {
        self.push(Record::Text(name.into(), s.into()))
    }

    pub fn render(&self) -> String {
        let mut out = format!("ucnorm-{} {VERSION}\n", self.kind);
        for r in &self.records {
            match r {
                Record::Space { tag, n, tuple } => match tuple {
                    Some(t) => writeln!(out, "space {tag} {n} {t}").unwrap(),
                    None => writeln!(out, "space {tag} {n}").unwrap(),
                },
                Record::Matrix(name, m) => write_matrix(&mut out, name, m),
                Record::Tuple(name, t) => {
                    writeln!(out, "tuple {name} {} {}", t.len(), t.dim()).unwrap();
                    for (j, m) in t.iter().enumerate() {
                        write_matrix(&mut out, &format!("{name}.{}", j + 1), m);
                    }
                }
                Record::Poly(name, p) => {
                    writeln!(
                        out,
                        "poly {name} {} {} {} terms {}",
                        p.n(),
                        p.rows(),
                        p.cols(),
                        p.terms().len()
                    )
                    .unwrap();
                    // BTreeMap order is the graded order
                    for (alpha, a) in p.terms() {
                        let entries: Vec<C64> = (0..a.nrows())
                            .flat_map(|i| (0..a.ncols()).map(move |j| (i, j)))
                            .map(|ij| a[ij])
                            .collect();
                        writeln!(out, "{alpha} : {}", scalar_row(&entries)).unwrap();
                    }
                }
                Record::Points(name, pts) => {
                    let n = pts.first().map(Vec::len).unwrap_or(0);
                    writeln!(out, "points {name} {n} {}", pts.len()).unwrap();
                    for z in pts {
                        writeln!(out, "{}", scalar_row(z)).unwrap();
                    }
                }
                Record::Scalars(name, v) => {
                    writeln!(out, "scalars {name} {}", v.len()).unwrap();
                    for z in v {
                        writeln!(out, "{}", scalar(*z)).unwrap();
                    }
                }
                Record::Value(name, x) => writeln!(out, "value {name} {}", real(*x)).unwrap(),
                Record::Int(name, k) => writeln!(out, "int {name} {k}").unwrap(),
                Record::Text(name, s) => writeln!(out, "text {name} {s}").unwrap(),
            }
        }
        out
    }

    pub fn parse(src: &str) -> CliResult<Self> {
        Parser::new(src).document()
    }

    pub fn expect_kind(&self, kind: &str) -> CliResult<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(CliError::Format(format!(
                "expected a ucnorm-{kind} file, found ucnorm-{}",
                self.kind
            )))
        }
    }

    fn find(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name() == name)
    }

    fn missing(&self, what: &str, name: &str) -> CliError {
        CliError::Format(format!("ucnorm-{} file has no {what} record `{name}`", self.kind))
    }

    pub fn get_matrix(&self, name: &str) -> CliResult<&ComplexMatrix> {
        match self.find(name) {
            Some(Record::Matrix(_, m)) => Ok(m),
            _ => Err(self.missing("matrix", name)),
        }
    }

    pub fn get_tuple(&self, name: &str) -> CliResult<&MatrixTuple> {
        match self.find(name) {
            Some(Record::Tuple(_, t)) => Ok(t),
            _ => Err(self.missing("tuple", name)),
        }
    }

    pub fn get_poly(&self, name: &str) -> CliResult<&MatrixPolynomial> {
        match self.find(name) {
            Some(Record::Poly(_, p)) => Ok(p),
            _ => Err(self.missing("poly", name)),
        }
    }

    pub fn get_points(&self, name: &str) -> CliResult<&[Vec<C64>]> {
        match self.find(name) {
            Some(Record::Points(_, p)) => Ok(p),
            _ => Err(self.missing("points", name)),
        }
    }

    pub fn get_scalars(&self, name: &str) -> CliResult<&[C64]> {
        match self.find(name) {
            Some(Record::Scalars(_, v)) => Ok(v),
            _ => Err(self.missing("scalars", name)),
        }
    }

    pub fn get_value(&self, name: &str) -> CliResult<f64> {
        match self.find(name) {
            Some(Record::Value(_, x)) => Ok(*x),
            _ => Err(self.missing("value", name)),
        }
    }

    pub fn get_int(&self, name: &str) -> CliResult<u64> {
        match self.find(name) {
            Some(Record::Int(_, k)) => Ok(*k),
            _ => Err(self.missing("int", name)),
        }
    }

    pub fn get_text(&self, name: &str) -> CliResult<&str> {
        match self.find(name) {
            Some(Record::Text(_, s)) => Ok(s),
            _ => Err(self.missing("text", name)),
        }
    }

    pub fn has(&self, name: &str) -> bool {
        self.find(name).is_some()
    }

    /// The operator space of the file; a `concrete` space names a tuple of
    /// the same file as its generators.
    pub fn get_space(&self) -> CliResult<OperatorSpaceSpec> {
        match self.find("space") {
            Some(Record::Space { tag, n, tuple }) => {
                if tag == "concrete" {
                    let name = tuple
                        .as_deref()
                        .ok_or_else(|| CliError::Format("concrete space needs a generator tuple name".into()))?;
                    let t = self.get_tuple(name)?;
                    if t.len() != *n {
                        return Err(CliError::Format(format!(
                            "concrete space declares n = {n} but `{name}` has {} generators",
                            t.len()
                        )));
                    }
                    Ok(OperatorSpaceSpec::concrete(t.clone()))
                } else {
                    Ok(OperatorSpaceSpec::from_tag(tag, *n)?)
                }
            }
            _ => Err(self.missing("space", "space")),
        }
    }
}

struct Parser<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let lines = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Self { lines, pos: 0 }
    }

    fn next(&mut self, what: &str) -> CliResult<(usize, &'a str)> {
        let last = self.lines.last().map(|l| l.0).unwrap_or(0);
        let out = self
            .lines
            .get(self.pos)
            .copied()
            .ok_or_else(|| CliError::Parse {
                line: last + 1,
                msg: format!("unexpected end of file, expected {what}"),
            })?;
        self.pos += 1;
        Ok(out)
    }

    fn document(mut self) -> CliResult<Document> {
        let (line, head) = self.next("a header")?;
        let mut parts = head.split_whitespace();
        let kind = parts
            .next()
            .and_then(|h| h.strip_prefix("ucnorm-"))
            .ok_or_else(|| perr(line, "header must start with `ucnorm-<kind>`"))?;
        match parts.next() {
            Some(VERSION) => {}
            Some(v) => return Err(perr(line, &format!("unsupported version `{v}`"))),
            None => return Err(perr(line, "header has no version tag")),
        }
        let mut doc = Document::new(kind);
        while self.pos < self.lines.len() {
            let r = self.record()?;
            doc.records.push(r);
        }
        Ok(doc)
    }

    fn record(&mut self) -> CliResult<Record> {
        let (line, text) = self.next("a record")?;
        let words: Vec<&str> = text.split_whitespace().collect();
        let arg = |k: usize| words.get(k).copied().ok_or_else(|| perr(line, "record header is too short"));
        match words[0] {
            "space" => {
                let tag = arg(1)?.to_string();
                let n = uint(line, arg(2)?)?;
                Ok(Record::Space {
                    tag,
                    n,
                    tuple: words.get(3).map(|s| s.to_string()),
                })
            }
            "matrix" => {
                let (name, m) = self.matrix_body(line, &words)?;
                Ok(Record::Matrix(name, m))
            }
            "tuple" => {
                let name = arg(1)?.to_string();
                let (n, dim) = (uint(line, arg(2)?)?, uint(line, arg(3)?)?);
                if n == 0 {
                    return Err(perr(line, "a tuple needs at least one matrix"));
                }
                let mut mats = Vec::with_capacity(n);
                for j in 1..=n {
                    let (l, t) = self.next("a tuple matrix")?;
                    let w: Vec<&str> = t.split_whitespace().collect();
                    if w.first() != Some(&"matrix") {
                        return Err(perr(l, "expected a matrix record inside the tuple"));
                    }
                    let (mname, m) = self.matrix_body(l, &w)?;
                    if mname != format!("{name}.{j}") {
                        return Err(perr(l, &format!("expected matrix `{name}.{j}`, found `{mname}`")));
                    }
                    if m.nrows() != dim || m.ncols() != dim {
                        return Err(perr(l, &format!("tuple matrices must be {dim}x{dim}")));
                    }
                    mats.push(m);
                }
                let t = MatrixTuple::new(mats).map_err(|e| perr(line, &e.to_string()))?;
                Ok(Record::Tuple(name, t))
            }
            "poly" => {
                let name = arg(1)?.to_string();
                let n = uint(line, arg(2)?)?;
                let (rows, cols) = (uint(line, arg(3)?)?, uint(line, arg(4)?)?);
                if arg(5)? != "terms" {
                    return Err(perr(line, "expected `terms <m>` after the coefficient shape"));
                }
                let m = uint(line, arg(6)?)?;
                let mut p = MatrixPolynomial::zero(n, rows, cols).map_err(|e| perr(line, &e.to_string()))?;
                for _ in 0..m {
                    let (l, t) = self.next("a polynomial term")?;
                    let (lhs, rhs) = t
                        .split_once(':')
                        .ok_or_else(|| perr(l, "a term needs `exponents : entries`"))?;
                    let alpha = lhs
                        .split_whitespace()
                        .map(|s| s.parse::<u32>().map_err(|_| perr(l, &format!("bad exponent `{s}`"))))
                        .collect::<CliResult<Vec<_>>>()?;
                    if alpha.len() != n {
                        return Err(perr(l, &format!("expected {n} exponents, found {}", alpha.len())));
                    }
                    let alpha = MultiIndex(alpha);
                    if p.terms().contains_key(&alpha) {
                        return Err(perr(l, &format!("repeated term `{alpha}`")));
                    }
                    let entries = scalars(l, rhs)?;
                    if entries.len() != rows * cols {
                        return Err(perr(
                            l,
                            &format!("expected {} entries, found {}", rows * cols, entries.len()),
                        ));
                    }
                    let a = ComplexMatrix::from_row_slice(rows, cols, &entries);
                    p.add_term(alpha, a).map_err(|e| perr(l, &e.to_string()))?;
                }
                Ok(Record::Poly(name, p))
            }
            "points" => {
                let name = arg(1)?.to_string();
                let (n, count) = (uint(line, arg(2)?)?, uint(line, arg(3)?)?);
                let mut pts = Vec::with_capacity(count);
                for _ in 0..count {
                    let (l, t) = self.next("a point")?;
                    let z = scalars(l, t)?;
                    if z.len() != n {
                        return Err(perr(l, &format!("expected {n} coordinates, found {}", z.len())));
                    }
                    pts.push(z);
                }
                Ok(Record::Points(name, pts))
            }
            "scalars" => {
                let name = arg(1)?.to_string();
                let count = uint(line, arg(2)?)?;
                let mut v = Vec::with_capacity(count);
                for _ in 0..count {
                    let (l, t) = self.next("a scalar")?;
                    match scalars(l, t)?.as_slice() {
                        [z] => v.push(*z),
                        _ => return Err(perr(l, "expected exactly one scalar")),
                    }
                }
                Ok(Record::Scalars(name, v))
            }
            "value" => {
                let x = arg(2)?;
                let x = x.parse::<f64>().map_err(|_| perr(line, &format!("bad number `{x}`")))?;
                Ok(Record::Value(arg(1)?.into(), x))
            }
            "int" => {
                let k = arg(2)?;
                let k = k.parse::<u64>().map_err(|_| perr(line, &format!("bad integer `{k}`")))?;
                Ok(Record::Int(arg(1)?.into(), k))
            }
            "text" => {
                let name = arg(1)?;
                let rest = text[4..].trim_start()[name.len()..].trim_start();
                Ok(Record::Text(name.into(), rest.into()))
            }
            other => Err(perr(line, &format!("unknown record `{other}`"))),
        }
    }

    fn matrix_body(&mut self, line: usize, words: &[&str]) -> CliResult<(String, ComplexMatrix)> {
        if words.len() != 4 {
            return Err(perr(line, "expected `matrix <name> <rows> <cols>`"));
        }
        let (rows, cols) = (uint(line, words[2])?, uint(line, words[3])?);
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (l, t) = self.next("a matrix row")?;
            let row = scalars(l, t)?;
            if row.len() != cols {
                return Err(perr(l, &format!("expected {cols} entries, found {}", row.len())));
            }
            entries.extend(row);
        }
        Ok((words[1].to_string(), ComplexMatrix::from_row_slice(rows, cols, &entries)))
    }
}

fn perr(line: usize, msg: &str) -> CliError {
    CliError::Parse { line, msg: msg.into() }
}

fn uint(line: usize, s: &str) -> CliResult<usize> {
    s.parse().map_err(|_| perr(line, &format!("bad count `{s}`")))
}

/// Parses a run of `[re, im]` scalars.
fn scalars(line: usize, s: &str) -> CliResult<Vec<C64>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| perr(line, &format!("expected `[` at `{rest}`")))?;
        let end = body.find(']').ok_or_else(|| perr(line, "unclosed `[`"))?;
        let (re, im) = body[..end]
            .split_once(',')
            .ok_or_else(|| perr(line, "a scalar is written `[re, im]`"))?;
        let num = |t: &str| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| perr(line, &format!("bad number `{t}`")))
        };
        out.push(C64::new(num(re)?, num(im)?));
        rest = body[end + 1..].trim_start();
    }
    Ok(out)
}
