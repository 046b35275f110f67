//! Line-oriented system files.
//!
//! ```text
//! # the optimality family at k = 2
//! p=101; vars=x,y; order=grevlex
//! x^2 + y; y^2 + x
//! x*y
//! ```
//!
//! Statements end at `;` or a newline and `#` starts a comment. Header
//! statements are `key=value` with keys `p`, `vars` and (optionally) `order`;
//! `p` and `vars` must precede the first polynomial. Products may be written
//! with `*` or by juxtaposition (`3x^2y`, `x1x2`).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, TermOrder, MAX_VARS};
use crate::poly::{PolySystem, Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemFile {
    pub vars: Vec<String>,
    pub system: PolySystem,
}

impl SystemFile {
    pub fn new(system: PolySystem, vars: Vec<String>) -> Result<Self> {
        if vars.len() != system.ring().nvars() {
            return Err(Error::DimensionMismatch {
                expected: system.ring().nvars(),
                got: vars.len(),
            });
        }
        Ok(SystemFile { vars, system })
    }

    /// Uses `x1, ..., xn`, or `x, y, z` for up to three variables.
    pub fn with_default_names(system: PolySystem) -> Self {
        let n = system.ring().nvars();
        let vars = if n <= 3 {
            ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
        } else {
            crate::monomial::default_names(n)
        };
        SystemFile { vars, system }
    }

    pub fn modulus(&self) -> u32 {
        self.system.ring().field().modulus()
    }

    pub fn order(&self) -> TermOrder {
        self.system.ring().order()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "p={}\nvars={}\norder={}\n",
            self.modulus(),
            self.vars.join(","),
            self.order()
        );
        for f in self.system.polys() {
            out.push_str(&f.render(&self.vars));
            out.push('\n');
        }
        out
    }
}

struct Statement<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn statements(text: &str) -> Vec<Statement<'_>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut start = 0;
        for piece in line.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            if !piece.trim().is_empty() {
                out.push(Statement {
                    text: piece.trim(),
                    line: lineno + 1,
                    column: start + lead + 1,
                });
            }
            start += piece.len() + 1;
        }
    }
    out
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_system(text: &str) -> Result<SystemFile> {
    let mut modulus: Option<PrimeField> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut order = TermOrder::Grevlex;
    let mut polys = Vec::new();
    let mut ring: Option<Ring> = None;

    for st in statements(text) {
        if let Some((key, value)) = st.text.split_once('=') {
            if ring.is_some() {
                return Err(parse_error(st.line, st.column, "header after the first polynomial"));
            }
            let value = value.trim();
            match key.trim() {
                "p" => {
                    let p: u64 = value
                        .parse()
                        .map_err(|_| parse_error(st.line, st.column, format!("bad modulus `{value}`")))?;
                    modulus = Some(PrimeField::new(p)?);
                }
                "vars" => {
                    let names: Vec<String> = value.split(',').map(|v| v.trim().to_string()).collect();
                    let mut seen = HashSet::new();
                    for name in &names {
                        let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                        if !ok {
                            return Err(parse_error(st.line, st.column, format!("bad variable name `{name}`")));
                        }
                        if !seen.insert(name.clone()) {
                            return Err(parse_error(st.line, st.column, format!("duplicate variable `{name}`")));
                        }
                    }
                    if names.len() > MAX_VARS {
                        return Err(Error::TooManyVariables(names.len()));
                    }
                    vars = Some(names);
                }
                "order" => order = value.parse()?,
                other => return Err(parse_error(st.line, st.column, format!("unknown header `{other}`"))),
            }
            continue;
        }
        let r = match ring {
            Some(r) => r,
            None => {
                let (Some(field), Some(names)) = (modulus, vars.as_ref()) else {
                    return Err(parse_error(
                        st.line,
                        st.column,
                        "`p` and `vars` must precede the polynomials",
                    ));
                };
                let r = Ring::new(names.len(), field, order)?;
                ring = Some(r);
                r
            }
        };
        let f = ExprParser::new(st.text, st.line, st.column, r, vars.as_ref().expect("checked")).parse()?;
        if f.is_zero() {
            return Err(parse_error(st.line, st.column, "polynomial is zero"));
        }
        polys.push(f);
    }
    let (Some(field), Some(vars)) = (modulus, vars) else {
        return Err(parse_error(1, 1, "missing `p` or `vars` header"));
    };
    let ring = match ring {
        Some(r) => r,
        None => {
            return Err(parse_error(
                1,
                1,
                format!("no polynomials given (GF({}))", field.modulus()),
            ))
        }
    };
    Ok(SystemFile {
        vars,
        system: PolySystem::new(ring, polys)?,
    })
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    column: usize,
    ring: Ring,
    vars: &'a [String],
}

impl<'a> ExprParser<'a> {
    fn new(text: &'a str, line: usize, column: usize, ring: Ring, vars: &'a [String]) -> Self {
        ExprParser {
            src: text.as_bytes(),
            pos: 0,
            line,
            column,
            ring,
            vars,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        parse_error(self.line, self.column + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        let mut acc = Polynomial::zero(self.ring);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                None if !first => break,
                None => return Err(self.err("expected a term")),
                Some(_) if first => 1,
                Some(c) => return Err(self.err(format!("expected `+` or `-`, found `{}`", c as char))),
            };
            first = false;
            let (coeff, m) = self.term()?;
            let c = if sign < 0 { field.neg(coeff) } else { coeff };
            acc = acc.add(&Polynomial::term(self.ring, m, c as i64));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<(u32, Monomial)> {
        let mut coeff = 1u32;
        let mut mono = self.ring.one();
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(b'*') if factors > 0 => {
                    self.pos += 1;
                    self.factor(&mut coeff, &mut mono)?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'_' => self.factor(&mut coeff, &mut mono)?,
                Some(c) if factors == 0 => return Err(self.err(format!("unexpected `{}`", c as char))),
                None if factors == 0 => return Err(self.err("expected a term")),
                _ => break,
            }
            factors += 1;
        }
        Ok((coeff, mono))
    }

    fn number(&mut self) -> Result<u128> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        digits.parse().map_err(|_| self.err(format!("bad number `{digits}`")))
    }

    fn exponent(&mut self) -> Result<u128> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                return Err(self.err("expected an exponent"));
            }
            self.number()
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self, coeff: &mut u32, mono: &mut Monomial) -> Result<()> {
        let field = self.ring.field();
        self.skip_ws();
        let c = self.src[self.pos];
        if c.is_ascii_digit() {
            let v = self.number()?;
            let e = self.exponent()?;
            let base = (v % field.modulus() as u128) as u32;
            *coeff = field.mul(*coeff, field.pow(base, e as u64));
            return Ok(());
        }
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let ident = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .to_string();
        let indices = self
            .split_ident(&ident)
            .ok_or_else(|| parse_error(self.line, self.column + start, format!("unknown variable `{ident}`")))?;
        let e = self.exponent()?;
        let e = u16::try_from(e).map_err(|_| self.err("exponent too large"))?;
        // the exponent binds to the last variable of a juxtaposed run
        let last = indices.len() - 1;
        for (k, &i) in indices.iter().enumerate() {
            let power = if k == last { e } else { 1 };
            let mut exps = vec![0u16; self.ring.nvars()];
            exps[i] = power;
            *mono = mono.mul(&Monomial::new(&exps)?);
        }
        Ok(())
    }

    /// Splits an identifier into declared variable names, longest match first.
    fn split_ident(&self, ident: &str) -> Option<Vec<usize>> {
        if let Some(i) = self.vars.iter().position(|v| v == ident) {
            return Some(vec![i]);
        }
        let mut out = Vec::new();
        let mut rest = ident;
        while !rest.is_empty() {
            let (i, len) = self
                .vars
                .iter()
                .enumerate()
                .filter(|(_, v)| rest.starts_with(v.as_str()))
                .map(|(i, v)| (i, v.len()))
                .max_by_key(|&(_, len)| len)?;
            out.push(i);
            rest = &rest[len..];
        }
        Some(out)
    }
}
