//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: integer literals, identifiers, `+ - * / ^`, parentheses.
//! Implicit multiplication is rejected; `/` only divides by nonzero
//! constants. The identifiers `w` (extension fields) and `t` (rational
//! function fields) denote the field generator unless a frame variable uses
//! that name.

use num_bigint::BigInt;

use super::Poly;
use crate::error::{Error, Result};
use crate::scalars::FieldSpec;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (l0, c0) = (line, col);
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Int(s.parse().unwrap()), line: l0, column: c0 });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Ident(s), line: l0, column: c0 });
        } else if "+-*/^()".contains(c) {
            i += 1;
            col += 1;
            out.push(Token { tok: Tok::Sym(c), line: l0, column: c0 });
        } else {
            return Err(Error::Parse {
                line: l0,
                column: c0,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Token { tok: Tok::End, line, column: col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    names: &'a [String],
    field: &'a FieldSpec,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: t.line, column: t.column, message: msg.into() })
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Sym('+') => {
                    self.next();
                    acc = acc + self.term()?;
                }
                Tok::Sym('-') => {
                    self.next();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Sym('*') => {
                    self.next();
                    acc = acc * self.unary()?;
                }
                Tok::Sym('/') => {
                    let at = self.next();
                    let d = self.unary()?;
                    if !d.is_constant() {
                        return self.err(&at, "division by a non-constant");
                    }
                    let c = d.constant_term();
                    if c.is_zero() {
                        return self.err(&at, "division by zero");
                    }
                    acc = acc.scale(&c.inv()?);
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::Sym('(') => {
                    let t = self.peek().clone();
                    return self.err(&t, "implicit multiplication is not allowed; use `*`");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek().tok {
            Tok::Sym('-') => {
                self.next();
                Ok(-self.unary()?)
            }
            Tok::Sym('+') => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Sym('^') {
            self.next();
            let t = self.next();
            match t.tok {
                Tok::Int(ref k) => {
                    let k: u32 = match u32::try_from(k) {
                        Ok(k) if k <= 100_000 => k,
                        _ => return self.err(&t, "exponent too large"),
                    };
                    if self.peek().tok == Tok::Sym('^') {
                        let t2 = self.peek().clone();
                        return self.err(&t2, "chained `^` is ambiguous; use parentheses");
                    }
                    Ok(base.pow(k))
                }
                _ => self.err(&t, "expected a nonnegative integer exponent after `^`"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let t = self.next();
        match t.tok {
            Tok::Int(ref v) => Ok(Poly::constant(self.field, self.n(), self.field.from_bigint(v))),
            Tok::Ident(ref name) => {
                if let Some(i) = self.names.iter().position(|s| s == name) {
                    return Ok(Poly::var(self.field, self.n(), i));
                }
                if self.field.generator_name() == Some(name.as_str()) {
                    let g = self.field.generator().expect("generator exists");
                    return Ok(Poly::constant(self.field, self.n(), g));
                }
                Err(Error::UnknownVariable(name.clone()))
            }
            Tok::Sym('(') => {
                let inner = self.expr()?;
                let close = self.next();
                if close.tok != Tok::Sym(')') {
                    return self.err(&close, "expected `)`");
                }
                Ok(inner)
            }
            Tok::End => self.err(&t, "unexpected end of input"),
            Tok::Sym(c) => self.err(&t, format!("unexpected `{c}`")),
        }
    }
}

/// Parses `text` as a polynomial in the variables `names` over `field`.
pub fn parse_poly(text: &str, names: &[String], field: &FieldSpec) -> Result<Poly> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, names, field };
    let out = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, "trailing input");
    }
    Ok(out)
}

/// The distinct variable names used in `text`, sorted. The generator names
/// `w` and `t` are skipped over the fields that define them.
pub fn identifiers(text: &str, field: &FieldSpec) -> Result<Vec<String>> {
    let generator = match field {
        FieldSpec::Ext(_) => Some("w"),
        FieldSpec::RatFunc(_) => Some("t"),
        _ => None,
    };
    let mut out: Vec<String> = lex(text)?
        .into_iter()
        .filter_map(|t| match t.tok {
            Tok::Ident(s) if Some(s.as_str()) != generator => Some(s),
            _ => None,
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}
