//! Parser for the canonical polynomial rendering.
//!
//! Accepts `+ - * / ^`, parentheses, integer literals, the imaginary unit
//! `I`, the parameter `u` and the supplied variable names. Division is only
//! allowed by nonzero constants. Decimal points are rejected so that no
//! floating-point value can slip in.

use num_traits::Zero;

use super::{MPoly, ParamScalar, Scalar};
use crate::error::{Result, SboError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                return Err(SboError::Parse(format!(
                    "floating-point literal not allowed in {s:?}; use an exact fraction"
                )));
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Int(digits.parse().expect("digits")));
        } else if c == '.' {
            return Err(SboError::Parse(format!(
                "floating-point literal not allowed in {s:?}; use an exact fraction"
            )));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '\u{2212}' {
            // typographic minus
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(SboError::Parse(format!(
                "unexpected character {c:?} in {s:?}"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = match (d.is_constant(), d.constant_term().as_constant()) {
                    (true, Some(c)) if !c.is_zero() => c,
                    (true, Some(_)) => return Err(SboError::DivisionByZero),
                    _ => {
                        return Err(SboError::Parse(
                            "division is only allowed by nonzero constants".into(),
                        ))
                    }
                };
                acc = acc.scale_scalar(&c.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Int(k)) => {
                    self.pos += 1;
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| SboError::Parse("exponent too large".into()))?;
                    Ok(base.pow(k))
                }
                _ => Err(SboError::Parse("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        let n = self.nvars();
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(k)) => {
                self.pos += 1;
                let r = num_rational::BigRational::from_integer(k);
                Ok(MPoly::from_scalar(n, Scalar::real(r)))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if id == "I" {
                    Ok(MPoly::from_scalar(n, Scalar::i()))
                } else if id == "u" {
                    Ok(MPoly::constant(n, ParamScalar::u()))
                } else if let Some(k) = self.names.iter().position(|s| *s == id) {
                    Ok(MPoly::var(n, k))
                } else {
                    Err(SboError::Parse(format!("unknown symbol {id:?}")))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(SboError::Parse("expected ')'".into()));
                }
                Ok(e)
            }
            other => Err(SboError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a polynomial in the named variables (plus `u` and `I`).
pub fn parse_poly(s: &str, names: &[&str]) -> Result<MPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(SboError::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        names,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(SboError::Parse(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

/// Parses a polynomial in the coordinate variables `x1 … xn`.
pub fn parse_poly_x(s: &str, nvars: usize) -> Result<MPoly> {
    let names: Vec<String> = (1..=nvars).map(|k| format!("x{k}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    parse_poly(s, &refs)
}

/// Parses an exact parameter value: a polynomial in `u` only.
pub fn parse_param(s: &str) -> Result<ParamScalar> {
    let p = parse_poly(s, &[])?;
    Ok(p.constant_term())
}
