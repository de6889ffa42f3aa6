//! Plain-text matrix polynomial files.
//!
//! ```text
//! # optional comments
//! matpoly 3 1 32003
//! 0 1 0
//! 0 0 0
//! 0 0 0
//!
//! 1 0 0
//! 0 2 0
//! 0 0 3
//! ```
//!
//! The header gives `n k char` (`char` 0 means the rationals), followed by
//! `k + 1` blocks of `n` rows. A pair file holds two such records in a row.

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::Matrix;
use crate::truncmat::MatPoly;

/// Line cursor skipping blank lines and `#` comments, keeping one-based
/// line numbers for error messages.
pub(crate) struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate().peekable(), last: 0 }
    }

    fn skip_blank(&mut self) {
        while let Some((_, l)) = self.inner.peek() {
            let t = l.trim();
            if t.is_empty() || t.starts_with('#') {
                self.inner.next();
            } else {
                break;
            }
        }
    }

    pub(crate) fn peek(&mut self) -> Option<&'a str> {
        self.skip_blank();
        self.inner.peek().map(|(_, l)| l.trim())
    }

    pub(crate) fn next_line(&mut self) -> Option<(usize, &'a str)> {
        self.skip_blank();
        let (i, l) = self.inner.next()?;
        self.last = i + 1;
        Some((i + 1, l.trim()))
    }

    pub(crate) fn expect_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let last = self.last;
        self.next_line().ok_or_else(|| Error::Parse { line: last + 1, msg: format!("unexpected end of input, expected {what}") })
    }

    pub(crate) fn err(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn read_row<F: Field>(&mut self, field: F, len: usize) -> Result<Vec<F::Elem>> {
        let (ln, l) = self.expect_line("a matrix row")?;
        let row = l
            .split_whitespace()
            .map(|tok| field.parse_elem(tok).map_err(|e| self.err(ln, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != len {
            return Err(self.err(ln, format!("expected {len} entries, found {}", row.len())));
        }
        Ok(row)
    }

    pub(crate) fn read_matrix<F: Field>(&mut self, field: F, n: usize) -> Result<Matrix<F>> {
        let rows = (0..n).map(|_| self.read_row(field, n)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(field, rows))
    }

    pub(crate) fn read_matpoly_body<F: Field>(&mut self, field: F, n: usize, k: usize) -> Result<MatPoly<F>> {
        let coeffs = (0..=k).map(|_| self.read_matrix(field, n)).collect::<Result<Vec<_>>>()?;
        Ok(MatPoly::from_coeffs(coeffs))
    }
}

fn parse_header(ln: usize, line: &str) -> Result<(usize, usize, FieldSpec)> {
    let err = |msg: &str| Error::Parse { line: ln, msg: msg.to_string() };
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "matpoly" {
        return Err(err("expected header `matpoly n k char`"));
    }
    let n: usize = toks[1].parse().map_err(|_| err("bad n"))?;
    let k: usize = toks[2].parse().map_err(|_| err("bad k"))?;
    if n == 0 {
        return Err(err("n must be positive"));
    }
    let spec: FieldSpec = match toks[3] {
        "0" => FieldSpec::Rationals,
        c => c.parse().map_err(|_| err("bad characteristic"))?,
    };
    spec.validate().map_err(|e| err(&e.to_string()))?;
    Ok((n, k, spec))
}

/// Field named by the first header of the text.
pub fn peek_field_spec(text: &str) -> Result<FieldSpec> {
    let mut lines = Lines::new(text);
    let (ln, l) = lines.expect_line("a matpoly header")?;
    Ok(parse_header(ln, l)?.2)
}

/// Every record in the text; all must match `field`.
pub fn parse_matpolys<F: Field>(field: F, text: &str) -> Result<Vec<MatPoly<F>>> {
    let mut lines = Lines::new(text);
    let mut out = Vec::new();
    while lines.peek().is_some() {
        let (ln, l) = lines.expect_line("a matpoly header")?;
        let (n, k, spec) = parse_header(ln, l)?;
        if spec != field.spec() {
            return Err(lines.err(ln, format!("file is over {spec}, expected {}", field.spec())));
        }
        out.push(lines.read_matpoly_body(field, n, k)?);
    }
    Ok(out)
}

pub fn parse_matpoly<F: Field>(field: F, text: &str) -> Result<MatPoly<F>> {
    let mut v = parse_matpolys(field, text)?;
    if v.len() != 1 {
        return Err(Error::Parse { line: 0, msg: format!("expected one matpoly record, found {}", v.len()) });
    }
    Ok(v.pop().unwrap())
}

pub fn parse_pair<F: Field>(field: F, text: &str) -> Result<(MatPoly<F>, MatPoly<F>)> {
    let mut v = parse_matpolys(field, text)?;
    if v.len() != 2 {
        return Err(Error::Parse { line: 0, msg: format!("expected two matpoly records, found {}", v.len()) });
    }
    let b = v.pop().unwrap();
    let a = v.pop().unwrap();
    if a.n() != b.n() || a.k() != b.k() {
        return Err(Error::ShapeMismatch("pair records differ in n or k".into()));
    }
    Ok((a, b))
}

pub(crate) fn write_matrix_rows<F: Field>(out: &mut String, m: &Matrix<F>) {
    let f = m.field();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| f.format_elem(x)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

fn char_token(spec: FieldSpec) -> String {
    match spec {
        FieldSpec::Rationals => "0".into(),
        FieldSpec::Prime(p) => p.to_string(),
    }
}

pub fn write_matpoly<F: Field>(a: &MatPoly<F>) -> String {
    let mut out = format!("matpoly {} {} {}\n", a.n(), a.k(), char_token(a.field().spec()));
    for (s, m) in a.coeffs().iter().enumerate() {
        if s > 0 {
            out.push('\n');
        }
        write_matrix_rows(&mut out, m);
    }
    out
}

pub fn write_pair<F: Field>(a: &MatPoly<F>, b: &MatPoly<F>) -> String {
    format!("{}\n{}", write_matpoly(a), write_matpoly(b))
}
