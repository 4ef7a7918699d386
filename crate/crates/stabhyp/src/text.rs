//! Text grammars: scalar literals, vectors, hyperplane equations,
//! arrangement files and residue files, plus the matching printers.
//!
//! Scalars are exact literals only, never decimals: `p/q`, `z^k`, `r*z^k`,
//! and parenthesized signed sums such as `(3/2*z^2 - 1)`. Hyperplane
//! equations are `<lin-comb> = <lin-comb>` with variables `x1 .. xn`.
//! Parse errors carry line and column for CLI diagnostics.

use crate::cyclo::{CycField, CycScalar, Rat};
use crate::geom::{Hyperplane, Vector};
use crate::pfaffian::LogConnection;
use crate::poset::Arrangement;
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    fn here(cur: &Cursor<'_>, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: cur.line,
            col: cur.col(),
            msg: msg.into(),
        }
    }
}

/// Character cursor over a single line (the multi-line formats split first).
struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
    line: usize,
    base_col: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize, base_col: usize) -> Cursor<'a> {
        Cursor {
            text: text.as_bytes(),
            pos: 0,
            line,
            base_col,
        }
    }

    fn col(&self) -> usize {
        self.base_col + self.pos + 1
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(ParseError::here(self, "unexpected trailing input"))
        }
    }
}

fn parse_uint(cur: &mut Cursor<'_>) -> Result<BigInt, ParseError> {
    cur.skip_ws();
    let start = cur.pos;
    while matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
        cur.pos += 1;
    }
    if cur.pos == start {
        return Err(ParseError::here(cur, "expected a digit"));
    }
    let digits = std::str::from_utf8(&cur.text[start..cur.pos]).unwrap();
    Ok(digits.parse::<BigInt>().unwrap())
}

fn parse_rational(cur: &mut Cursor<'_>) -> Result<Rat, ParseError> {
    let numer = parse_uint(cur)?;
    cur.skip_ws();
    if cur.eat(b'/') {
        cur.skip_ws();
        let denom = parse_uint(cur)?;
        if denom.is_zero() {
            return Err(ParseError::here(cur, "zero denominator"));
        }
        Ok(Rat::new(numer, denom))
    } else {
        Ok(Rat::from_integer(numer))
    }
}

/// `z` or `z^k`: the power of zeta_M.
fn parse_zeta_power(cur: &mut Cursor<'_>, field: &CycField) -> Result<CycScalar, ParseError> {
    if !cur.eat(b'z') {
        return Err(ParseError::here(cur, "expected z"));
    }
    if cur.eat(b'^') {
        let k = parse_uint(cur)?;
        let k: u64 = (&k % BigInt::from(field.modulus()))
            .try_into()
            .expect("reduced exponent fits");
        Ok(field.zeta_pow(k))
    } else {
        Ok(field.zeta_pow(1))
    }
}

/// One signed term: rational, zeta power, or rational * zeta power.
fn parse_term(cur: &mut Cursor<'_>, field: &CycField) -> Result<CycScalar, ParseError> {
    cur.skip_ws();
    let mut negative = false;
    if cur.eat(b'-') {
        negative = true;
    } else {
        let _ = cur.eat(b'+');
    }
    cur.skip_ws();
    let value = match cur.peek() {
        Some(b'z') => parse_zeta_power(cur, field)?,
        Some(c) if c.is_ascii_digit() => {
            let r = parse_rational(cur)?;
            // `*` binds to the term only when a zeta power follows; in
            // equation context `2*x1` the star belongs to the variable.
            let save = cur.pos;
            cur.skip_ws();
            if cur.eat(b'*') {
                cur.skip_ws();
                if cur.peek() == Some(b'z') {
                    let zp = parse_zeta_power(cur, field)?;
                    field.mul(&field.from_rational(r), &zp)
                } else {
                    cur.pos = save;
                    field.from_rational(r)
                }
            } else {
                cur.pos = save;
                field.from_rational(r)
            }
        }
        _ => return Err(ParseError::here(cur, "expected a scalar term")),
    };
    Ok(if negative { field.neg(&value) } else { value })
}

/// A sum of terms (no parentheses at this level).
fn parse_sum(cur: &mut Cursor<'_>, field: &CycField) -> Result<CycScalar, ParseError> {
    let mut acc = parse_term(cur, field)?;
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some(b'+') | Some(b'-') => {
                let term = parse_term(cur, field)?;
                acc = field.add(&acc, &term);
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_scalar_inner(cur: &mut Cursor<'_>, field: &CycField) -> Result<CycScalar, ParseError> {
    cur.skip_ws();
    let mut negative = false;
    if cur.peek() == Some(b'-') {
        // peek ahead: `-(...)` negates a parenthesized sum
        if cur.text.get(cur.pos + 1) == Some(&b'(') {
            cur.pos += 1;
            negative = true;
        }
    }
    cur.skip_ws();
    let v = if cur.eat(b'(') {
        let v = parse_sum(cur, field)?;
        cur.skip_ws();
        if !cur.eat(b')') {
            return Err(ParseError::here(cur, "expected )"));
        }
        v
    } else {
        parse_term(cur, field)?
    };
    Ok(if negative { field.neg(&v) } else { v })
}

/// Parse a complete scalar literal.
pub fn parse_scalar(text: &str, field: &CycField) -> Result<CycScalar, ParseError> {
    let mut cur = Cursor::new(text, 1, 0);
    let v = parse_scalar_inner(&mut cur, field)?;
    cur.expect_end()?;
    Ok(v)
}

/// Comma-separated scalar literals as a direction vector.
pub fn parse_vector(text: &str, field: &CycField, dim: usize) -> Result<Vector, ParseError> {
    let mut entries = Vec::new();
    let mut col = 0usize;
    for piece in text.split(',') {
        let mut cur = Cursor::new(piece, 1, col);
        let v = parse_scalar_inner(&mut cur, field)?;
        cur.expect_end()?;
        entries.push(v);
        col += piece.len() + 1;
    }
    if entries.len() != dim {
        return Err(ParseError {
            line: 1,
            col: 1,
            msg: format!("expected {} coordinates, found {}", dim, entries.len()),
        });
    }
    Vector::new(entries).map_err(|_| ParseError {
        line: 1,
        col: 1,
        msg: "zero vector".to_string(),
    })
}

/// One side of a hyperplane equation: scalar coefficients applied to
/// variables x1..xn plus constant terms. Returns (linear, constant).
fn parse_lin_comb(
    cur: &mut Cursor<'_>,
    field: &CycField,
    dim: usize,
) -> Result<(Vec<CycScalar>, CycScalar), ParseError> {
    let mut linear = vec![field.zero(); dim];
    let mut constant = field.zero();
    let mut first = true;
    loop {
        cur.skip_ws();
        let sign = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else {
            break;
        };
        first = false;
        cur.skip_ws();
        // coefficient (optional), then variable (optional)
        let coeff = if cur.peek() == Some(b'x') {
            field.one()
        } else {
            let c = parse_scalar_inner(cur, field)?;
            cur.skip_ws();
            if cur.eat(b'*') {
                cur.skip_ws();
            }
            c
        };
        let coeff = if sign { field.neg(&coeff) } else { coeff };
        cur.skip_ws();
        if cur.eat(b'x') {
            let idx = parse_uint(cur)?;
            let idx: usize = idx
                .try_into()
                .map_err(|_| ParseError::here(cur, "variable index out of range"))?;
            if idx == 0 || idx > dim {
                return Err(ParseError::here(
                    cur,
                    format!("variable x{} outside x1..x{}", idx, dim),
                ));
            }
            linear[idx - 1] = field.add(&linear[idx - 1], &coeff);
        } else {
            constant = field.add(&constant, &coeff);
        }
        cur.skip_ws();
        if !matches!(cur.peek(), Some(b'+') | Some(b'-')) {
            break;
        }
    }
    Ok((linear, constant))
}

/// `<lin-comb> = <lin-comb>`, normalized to sum(c_i x_i) + c = 0.
pub fn parse_hyperplane(
    text: &str,
    field: &CycField,
    dim: usize,
    line: usize,
) -> Result<Hyperplane, ParseError> {
    let eq = text.find('=').ok_or(ParseError {
        line,
        col: text.len() + 1,
        msg: "expected = in hyperplane equation".to_string(),
    })?;
    let mut left = Cursor::new(&text[..eq], line, 0);
    let (lin_l, con_l) = parse_lin_comb(&mut left, field, dim)?;
    left.expect_end()?;
    let mut right = Cursor::new(&text[eq + 1..], line, eq + 1);
    let (lin_r, con_r) = parse_lin_comb(&mut right, field, dim)?;
    right.expect_end()?;
    let linear: Vec<CycScalar> = lin_l
        .iter()
        .zip(&lin_r)
        .map(|(a, b)| field.sub(a, b))
        .collect();
    let constant = field.sub(&con_l, &con_r);
    Hyperplane::new(field, linear, constant).map_err(|_| ParseError {
        line,
        col: 1,
        msg: "equation has no linear part".to_string(),
    })
}

/// Warning emitted while reading an arrangement file (currently only
/// duplicate hyperplanes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileWarning {
    pub line: usize,
    pub msg: String,
}

/// Arrangement file: `field M=<int>` and `dim n=<int>` headers, then one
/// hyperplane equation per line; `#` starts a comment.
pub fn parse_arrangement(text: &str) -> Result<(Arrangement, Vec<FileWarning>), ParseError> {
    let mut modulus: Option<u64> = None;
    let mut dim: Option<usize> = None;
    let mut field: Option<CycField> = None;
    let mut hyperplanes: Vec<Hyperplane> = Vec::new();
    let mut warnings = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("field") {
            let rest = rest.trim();
            let value = rest.strip_prefix("M=").or_else(|| rest.strip_prefix("M =")).map(str::trim);
            let value = value.ok_or(ParseError {
                line: line_no,
                col: 1,
                msg: "expected `field M=<int>`".to_string(),
            })?;
            let m: u64 = value.parse().map_err(|_| ParseError {
                line: line_no,
                col: 1,
                msg: format!("invalid field modulus `{}`", value),
            })?;
            if m == 0 {
                return Err(ParseError {
                    line: line_no,
                    col: 1,
                    msg: "field modulus must be positive".to_string(),
                });
            }
            if matches!(modulus, Some(prev) if prev != m) {
                return Err(ParseError {
                    line: line_no,
                    col: 1,
                    msg: "field modulus redefined".to_string(),
                });
            }
            modulus = Some(m);
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("dim") {
            let rest = rest.trim();
            let value = rest.strip_prefix("n=").or_else(|| rest.strip_prefix("n =")).map(str::trim);
            let value = value.ok_or(ParseError {
                line: line_no,
                col: 1,
                msg: "expected `dim n=<int>`".to_string(),
            })?;
            let n: usize = value.parse().map_err(|_| ParseError {
                line: line_no,
                col: 1,
                msg: format!("invalid dimension `{}`", value),
            })?;
            if n == 0 {
                return Err(ParseError {
                    line: line_no,
                    col: 1,
                    msg: "dimension must be positive".to_string(),
                });
            }
            if matches!(dim, Some(prev) if prev != n) {
                return Err(ParseError {
                    line: line_no,
                    col: 1,
                    msg: "dimension redefined".to_string(),
                });
            }
            dim = Some(n);
            continue;
        }
        let (m, n) = match (modulus, dim) {
            (Some(m), Some(n)) => (m, n),
            _ => {
                return Err(ParseError {
                    line: line_no,
                    col: 1,
                    msg: "headers `field M=` and `dim n=` must precede equations".to_string(),
                })
            }
        };
        let f = field.get_or_insert_with(|| CycField::new(m));
        let h = parse_hyperplane(trimmed, f, n, line_no)?;
        if hyperplanes.contains(&h) {
            warnings.push(FileWarning {
                line: line_no,
                msg: "duplicate hyperplane ignored".to_string(),
            });
        } else {
            hyperplanes.push(h);
        }
    }
    let (m, n) = match (modulus, dim) {
        (Some(m), Some(n)) => (m, n),
        _ => {
            return Err(ParseError {
                line: text.lines().count() + 1,
                col: 1,
                msg: "missing `field M=` or `dim n=` header".to_string(),
            })
        }
    };
    let f = field.unwrap_or_else(|| CycField::new(m));
    Ok((Arrangement::new(f, n, hyperplanes), warnings))
}

/// Canonical equation text `c1*x1 + ... + c = 0`-normalized as
/// `<terms> = <negated constant>`.
pub fn render_hyperplane(field: &CycField, h: &Hyperplane) -> String {
    let mut lhs = String::new();
    for (i, c) in h.linear().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let lit = field.render(c);
        let (neg, abs) = match lit.strip_prefix('-') {
            Some(rest) if !lit.starts_with("-(") => (true, rest.to_string()),
            _ => (false, lit),
        };
        if lhs.is_empty() {
            if neg {
                lhs.push('-');
            }
        } else if neg {
            lhs.push_str(" - ");
        } else {
            lhs.push_str(" + ");
        }
        if abs == "1" {
            lhs.push_str(&format!("x{}", i + 1));
        } else {
            lhs.push_str(&format!("{}*x{}", abs, i + 1));
        }
    }
    let rhs = field.render(&field.neg(h.constant()));
    format!("{} = {}", lhs, rhs)
}

pub fn render_vector(field: &CycField, v: &Vector) -> String {
    v.entries()
        .iter()
        .map(|e| field.render(e))
        .collect::<Vec<_>>()
        .join(",")
}

/// Arrangement file body with headers, re-parseable by `parse_arrangement`.
pub fn render_arrangement(arr: &Arrangement) -> String {
    let field = arr.field();
    let mut out = String::new();
    out.push_str(&format!("field M={}\n", field.modulus()));
    out.push_str(&format!("dim n={}\n", arr.dim()));
    for h in arr.hyperplanes() {
        out.push_str(&render_hyperplane(field, h));
        out.push('\n');
    }
    out
}

/// Residue file: header `size N`, then for each hyperplane (file order) an
/// N x N matrix of scalar literals, row-major, whitespace separated.
/// Comments with `#`, blank lines allowed.
pub fn parse_residues(
    text: &str,
    arr: &Arrangement,
) -> Result<LogConnection, ParseError> {
    let field = arr.field();
    let mut size: Option<usize> = None;
    let mut entries: Vec<CycScalar> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("size") {
            let n: usize = rest.trim().parse().map_err(|_| ParseError {
                line: line_no,
                col: 1,
                msg: format!("invalid size `{}`", rest.trim()),
            })?;
            if n == 0 {
                return Err(ParseError {
                    line: line_no,
                    col: 1,
                    msg: "matrix size must be positive".to_string(),
                });
            }
            size = Some(n);
            continue;
        }
        if size.is_none() {
            return Err(ParseError {
                line: line_no,
                col: 1,
                msg: "`size N` header must precede matrix entries".to_string(),
            });
        }
        for (piece, col) in split_outside_parens(trimmed) {
            let mut cur = Cursor::new(piece, line_no, col);
            let v = parse_scalar_inner(&mut cur, field)?;
            cur.expect_end()?;
            entries.push(v);
        }
    }
    let n = size.ok_or(ParseError {
        line: 1,
        col: 1,
        msg: "missing `size N` header".to_string(),
    })?;
    let expected = arr.len() * n * n;
    if entries.len() != expected {
        return Err(ParseError {
            line: text.lines().count() + 1,
            col: 1,
            msg: format!(
                "expected {} matrix entries ({} hyperplanes, size {}), found {}",
                expected,
                arr.len(),
                n,
                entries.len()
            ),
        });
    }
    let mut residues = Vec::with_capacity(arr.len());
    let mut it = entries.into_iter();
    for _ in 0..arr.len() {
        let mut matrix = Vec::with_capacity(n);
        for _ in 0..n {
            matrix.push((&mut it).take(n).collect::<Vec<_>>());
        }
        residues.push(matrix);
    }
    LogConnection::new(arr.clone(), n, residues).map_err(|e| ParseError {
        line: 1,
        col: 1,
        msg: e.to_string(),
    })
}

pub fn render_residues(conn: &LogConnection) -> String {
    let field = conn.arrangement().field();
    let mut out = format!("size {}\n", conn.size());
    for (i, m) in conn.residues().iter().enumerate() {
        out.push_str(&format!("# hyperplane {}\n", i));
        for row in m {
            let rendered: Vec<String> = row.iter().map(|e| field.render(e)).collect();
            out.push_str(&rendered.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Split a line on whitespace, treating parenthesized groups as single
/// tokens. Returns pieces with their starting columns.
fn split_outside_parens(line: &str) -> Vec<(&str, usize)> {
    let bytes = line.as_bytes();
    let mut out = Vec::new();
    let mut start = None;
    let mut depth = 0usize;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => {
                if start.is_none() {
                    start = Some(i);
                }
                depth += 1;
            }
            b')' => depth = depth.saturating_sub(1),
            b' ' | b'\t' if depth == 0 => {
                if let Some(s) = start.take() {
                    out.push((&line[s..i], s));
                }
            }
            _ => {
                if start.is_none() {
                    start = Some(i);
                }
            }
        }
    }
    if let Some(s) = start {
        out.push((&line[s..], s));
    }
    out
}

impl fmt::Display for FileWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn scalar_literals() {
        let f = CycField::new(4);
        assert_eq!(parse_scalar("3/2", &f).unwrap(), f.from_ratio(3, 2));
        assert_eq!(parse_scalar("-5", &f).unwrap(), f.from_i64(-5));
        assert_eq!(parse_scalar("z^2", &f).unwrap(), f.from_i64(-1));
        assert_eq!(
            parse_scalar("(3/2*z^2 - 1)", &f).unwrap(),
            f.from_ratio(-5, 2)
        );
        assert_eq!(
            parse_scalar("(z + 1)", &f).unwrap(),
            f.add(&f.zeta_pow(1), &f.one())
        );
        assert!(parse_scalar("", &f).is_err());
        assert!(parse_scalar("1/0", &f).is_err());
        assert!(parse_scalar("q", &f).is_err());
    }

    #[test]
    fn hyperplane_equations() {
        let f = CycField::new(1);
        let h = parse_hyperplane("x1 - x2 = 0", &f, 2, 1).unwrap();
        assert_eq!(h.linear(), &[f.one(), f.from_i64(-1)]);
        let h = parse_hyperplane("x1 + x2 = 2", &f, 2, 1).unwrap();
        assert_eq!(*h.constant(), f.from_i64(-2));
        let h = parse_hyperplane("2*x1 = 1 - x2", &f, 2, 1).unwrap();
        // normalized: x1 + 1/2 x2 - 1/2 = 0
        assert_eq!(h.linear(), &[f.one(), f.from_ratio(1, 2)]);
        assert_eq!(*h.constant(), f.from_ratio(-1, 2));
        assert!(parse_hyperplane("x3 = 0", &f, 2, 1).is_err());
        assert!(parse_hyperplane("1 = 2", &f, 2, 1).is_err());
        assert!(parse_hyperplane("x1 + x2", &f, 2, 1).is_err());
    }

    #[test]
    fn arrangement_file_roundtrip() {
        let text = "\
# the running two-dimensional example
field M=1
dim n=2
x1 - x2 = 0
x1 + x2 = 1
x1 + x2 = 2
";
        let (arr, warnings) = parse_arrangement(text).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(arr.len(), 3);
        let rendered = render_arrangement(&arr);
        let (back, _) = parse_arrangement(&rendered).unwrap();
        assert!(arr.same_set(&back));
    }

    #[test]
    fn duplicate_hyperplane_warns() {
        let text = "field M=1\ndim n=2\nx1 = 0\n2*x1 = 0\n";
        let (arr, warnings) = parse_arrangement(text).unwrap();
        assert_eq!(arr.len(), 1);
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].line, 4);
    }

    #[test]
    fn error_positions() {
        let err = parse_arrangement("field M=1\ndim n=2\nx1 + ? = 0\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.col > 1);
    }

    #[test]
    fn conflicting_headers_are_rejected() {
        let err =
            parse_arrangement("field M=1\ndim n=2\nx1 = 0\ndim n=3\nx2 + x3 = 0\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.msg.contains("redefined"));
        let err = parse_arrangement("field M=1\nfield M=4\ndim n=2\nx1 = 0\n").unwrap_err();
        assert_eq!(err.line, 2);
        // an identical repeat is tolerated
        let (arr, _) = parse_arrangement("field M=1\ndim n=2\ndim n=2\nx1 = 0\n").unwrap();
        assert_eq!(arr.dim(), 2);
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hyperplane_print_parse_roundtrip(
            coeffs in proptest::collection::vec(arb_rat(), 3),
            constant in arb_rat(),
        ) {
            let f = CycField::new(4);
            let linear: Vec<CycScalar> = coeffs.iter().map(|r| f.from_rational(r.clone())).collect();
            prop_assume!(linear.iter().any(|c| !c.is_zero()));
            let h = Hyperplane::new(&f, linear, f.from_rational(constant)).unwrap();
            let rendered = render_hyperplane(&f, &h);
            let back = parse_hyperplane(&rendered, &f, 3, 1).unwrap();
            prop_assert_eq!(h, back);
        }

        #[test]
        fn vector_print_parse_roundtrip(entries in proptest::collection::vec((-4i64..=4, 0u64..4), 3)) {
            let f = CycField::new(4);
            let scalars: Vec<CycScalar> = entries
                .iter()
                .map(|&(r, zp)| f.add(&f.from_i64(r), &if zp == 0 { f.zero() } else { f.zeta_pow(zp) }))
                .collect();
            prop_assume!(scalars.iter().any(|c| !c.is_zero()));
            let v = Vector::new(scalars).unwrap();
            let rendered = render_vector(&f, &v);
            let back = parse_vector(&rendered, &f, 3).unwrap();
            prop_assert_eq!(v, back);
        }
    }
}
