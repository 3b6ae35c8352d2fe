//! Line-oriented system files.
//!
//! ```text
//! # comment
//! field 5
//! vars a b c
//! order grevlex
//! poly a*b*c - 1
//! poly a*b - c
//! ```
//!
//! `boolean` on its own line selects the quotient by the field equations.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{AlgebraError, Coeff, Monomial, Polynomial, Ring, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("missing `{0}` header before first polynomial")]
    MissingHeader(&'static str),
    #[error("duplicate `{0}` header")]
    DuplicateHeader(&'static str),
    #[error("unsupported order `{0}`")]
    UnsupportedOrder(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("coefficient {0} is out of the field")]
    CoefficientOutOfField(String),
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("no polynomials")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

/// A parsed system file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System {
    pub ring: Ring,
    pub polys: Vec<Polynomial>,
}

fn err(line: usize, col: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, col, kind }
}

/// Strip a trailing comment.
fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Column (1-based) of the first character of `rest` inside `line`.
fn col_of(line: &str, rest: &str) -> usize {
    line.len() - rest.len() + 1
}

pub fn parse_system(text: &str) -> Result<System, ParseError> {
    let mut field: Option<u32> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut boolean = false;
    let mut order_seen = false;
    let mut ring: Option<Ring> = None;
    let mut polys = Vec::new();
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        last_line = line_no;
        let body = content(raw);
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let (word, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let word_col = col_of(raw, trimmed);
        let header_after_polys = || {
            if ring.is_some() {
                Err(err(line_no, word_col, ParseErrorKind::Syntax(format!("`{word}` after polynomials"))))
            } else {
                Ok(())
            }
        };
        match word {
            "field" => {
                header_after_polys()?;
                if field.is_some() {
                    return Err(err(line_no, word_col, ParseErrorKind::DuplicateHeader("field")));
                }
                let arg = rest.trim();
                let p: u32 = arg.parse().map_err(|_| {
                    err(line_no, col_of(raw, rest.trim_start()), ParseErrorKind::Syntax(format!("bad modulus `{arg}`")))
                })?;
                field = Some(p);
            }
            "vars" => {
                header_after_polys()?;
                if vars.is_some() {
                    return Err(err(line_no, word_col, ParseErrorKind::DuplicateHeader("vars")));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for n in &names {
                    if !is_ident(n) {
                        let c = raw.find(n.as_str()).map_or(word_col, |i| i + 1);
                        return Err(err(line_no, c, ParseErrorKind::Syntax(format!("bad variable name `{n}`"))));
                    }
                }
                if names.is_empty() {
                    return Err(err(line_no, word_col, ParseErrorKind::Syntax("no variables".into())));
                }
                vars = Some(names);
            }
            "order" => {
                header_after_polys()?;
                if order_seen {
                    return Err(err(line_no, word_col, ParseErrorKind::DuplicateHeader("order")));
                }
                order_seen = true;
                let o = rest.trim();
                if o != "grevlex" {
                    return Err(err(line_no, col_of(raw, rest.trim_start()), ParseErrorKind::UnsupportedOrder(o.into())));
                }
            }
            "boolean" => {
                header_after_polys()?;
                if !rest.trim().is_empty() {
                    return Err(err(line_no, col_of(raw, rest.trim_start()), ParseErrorKind::Syntax("trailing input".into())));
                }
                boolean = true;
            }
            "poly" => {
                if ring.is_none() {
                    let p = field.ok_or(err(line_no, word_col, ParseErrorKind::MissingHeader("field")))?;
                    let names = vars.clone().ok_or(err(line_no, word_col, ParseErrorKind::MissingHeader("vars")))?;
                    ring = Some(Ring::new(p, names, boolean).map_err(|e| err(line_no, word_col, e.into()))?);
                }
                let r = ring.as_ref().unwrap();
                let offset = col_of(raw, rest) - 1;
                polys.push(parse_expr(r, rest, line_no, offset)?);
            }
            other => return Err(err(line_no, word_col, ParseErrorKind::UnknownDirective(other.into()))),
        }
    }
    match ring {
        Some(ring) => Ok(System { ring, polys }),
        None => Err(err(last_line.max(1), 1, ParseErrorKind::Empty)),
    }
}

/// Parse a list of polynomials over a known ring. Lines may carry a `poly`
/// prefix; header lines are accepted if they agree with `ring`.
pub fn parse_polys(ring: &Ring, text: &str) -> Result<Vec<Polynomial>, ParseError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let body = content(raw);
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let (word, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let col = col_of(raw, trimmed);
        let mismatch = |what: &str| err(line_no, col, ParseErrorKind::Syntax(format!("{what} does not match the system")));
        match word {
            "field" => {
                if rest.trim() != ring.field().modulus().to_string() {
                    return Err(mismatch("field"));
                }
            }
            "vars" => {
                if !rest.split_whitespace().eq(ring.var_names().iter().map(String::as_str)) {
                    return Err(mismatch("vars"));
                }
            }
            "order" => {
                if rest.trim() != "grevlex" {
                    return Err(err(line_no, col, ParseErrorKind::UnsupportedOrder(rest.trim().into())));
                }
            }
            "boolean" => {
                if !ring.is_boolean() {
                    return Err(mismatch("boolean"));
                }
            }
            "poly" => out.push(parse_expr(ring, rest, line_no, col_of(raw, rest) - 1)?),
            _ => out.push(parse_expr(ring, trimmed, line_no, col - 1)?),
        }
    }
    Ok(out)
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(s: &str, line: usize, offset: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        let col = offset + i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            d if d.is_ascii_digit() => {
                while i + 1 < b.len() && b[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Tok::Num(s[start..=i].to_string())
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i + 1 < b.len() && (b[i + 1].is_ascii_alphanumeric() || b[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(s[start..=i].to_string())
            }
            other => return Err(err(line, col, ParseErrorKind::Syntax(format!("unexpected character `{other}`")))),
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

/// Parse a sum of signed products of integers and powers of variables.
pub fn parse_expr(ring: &Ring, s: &str, line: usize, offset: usize) -> Result<Polynomial, ParseError> {
    let toks = tokenize(s, line, offset)?;
    let end_col = offset + s.trim_end().len() + 1;
    let fld = ring.field();
    let p = fld.modulus();
    let mut terms = Vec::new();
    let mut i = 0;
    let at = |i: usize| toks.get(i).map_or(end_col, |t| t.1);
    if toks.is_empty() {
        return Err(err(line, end_col, ParseErrorKind::Syntax("expected a polynomial".into())));
    }
    while i < toks.len() {
        let mut negative = false;
        match toks[i].0 {
            Tok::Plus | Tok::Minus => {
                negative = toks[i].0 == Tok::Minus;
                i += 1;
            }
            _ if !terms.is_empty() => {
                return Err(err(line, at(i), ParseErrorKind::Syntax("expected `+` or `-`".into())));
            }
            _ => {}
        }
        let mut coeff: Coeff = 1;
        let mut exps = vec![0u16; ring.nvars()];
        loop {
            match toks.get(i) {
                Some((Tok::Num(n), c)) => {
                    let v: u64 = n
                        .parse()
                        .map_err(|_| err(line, *c, ParseErrorKind::CoefficientOutOfField(n.clone())))?;
                    if v >= p as u64 {
                        return Err(err(line, *c, ParseErrorKind::CoefficientOutOfField(n.clone())));
                    }
                    coeff = fld.mul(coeff, v as Coeff);
                    i += 1;
                }
                Some((Tok::Ident(name), c)) => {
                    let v = ring
                        .var_names()
                        .iter()
                        .position(|x| x == name)
                        .ok_or_else(|| err(line, *c, ParseErrorKind::UnknownVariable(name.clone())))?;
                    i += 1;
                    let mut e: u32 = 1;
                    if matches!(toks.get(i), Some((Tok::Caret, _))) {
                        i += 1;
                        match toks.get(i) {
                            Some((Tok::Num(n), c)) => {
                                e = n
                                    .parse()
                                    .ok()
                                    .filter(|&e: &u32| e <= u16::MAX as u32)
                                    .ok_or_else(|| err(line, *c, ParseErrorKind::Syntax(format!("exponent `{n}` too large"))))?;
                                i += 1;
                            }
                            _ => return Err(err(line, at(i), ParseErrorKind::Syntax("expected an exponent".into()))),
                        }
                    }
                    let sum = exps[v] as u32 + e;
                    exps[v] = u16::try_from(sum)
                        .map_err(|_| err(line, *c, ParseErrorKind::Algebra(AlgebraError::ExponentOverflow { var: v })))?;
                }
                _ => return Err(err(line, at(i), ParseErrorKind::Syntax("expected a coefficient or variable".into()))),
            }
            if matches!(toks.get(i), Some((Tok::Star, _))) {
                i += 1;
            } else {
                break;
            }
        }
        if negative {
            coeff = fld.neg(coeff);
        }
        terms.push(Term {
            coeff,
            mono: Monomial::from_exponents(&exps),
        });
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// Canonical text for a system; `parse_system` inverts it.
pub fn serialize_system(ring: &Ring, polys: &[Polynomial]) -> String {
    let mut s = String::new();
    writeln!(s, "field {}", ring.field().modulus()).unwrap();
    writeln!(s, "vars {}", ring.var_names().join(" ")).unwrap();
    writeln!(s, "order {}", ring.order().tag()).unwrap();
    if ring.is_boolean() {
        s.push_str("boolean\n");
    }
    for f in polys {
        writeln!(s, "poly {}", f.display(ring)).unwrap();
    }
    s
}

/// One polynomial per line, no header.
pub fn format_polys(ring: &Ring, polys: &[Polynomial]) -> String {
    polys.iter().map(|f| f.display(ring) + "\n").collect()
}
