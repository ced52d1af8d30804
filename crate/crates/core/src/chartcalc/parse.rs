//! Infix function specifications such as `x1^2*sin(x2) + exp(-x1/2)`.
//!
//! Operators `+ - * / ^`, parentheses, decimal or `p/q`-style numbers, the
//! constant `sqrt2`, and the functions `exp`, `ln` (or `log`), `sin`, `cos`,
//! `sqrt`. Exponents must be constant; a constant exponent that is not an
//! integer produces a real power of a (required positive) base.

use thiserror::Error;

use super::{ExprId, ExprPool};
use crate::scalar::{parse_rational, ElemFn, Exact};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("at offset {pos}: {msg}")]
pub struct ParseExprError {
    pub pos: usize,
    pub msg: String,
}

/// `x1, …, xn`.
pub fn chart_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// `X0, X1, …, Xn, Xinf`.
pub fn ambient_var_names(n: usize) -> Vec<String> {
    let mut v: Vec<String> = (0..=n).map(|i| format!("X{i}")).collect();
    v.push("Xinf".into());
    v
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseExprError> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < b.len() && ((b[i] as char).is_ascii_digit() || b[i] == b'.') {
                i += 1;
            }
            if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
                let mut j = i + 1;
                if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                    j += 1;
                }
                if j < b.len() && (b[j] as char).is_ascii_digit() {
                    i = j;
                    while i < b.len() && (b[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push((start, Tok::Num(s[start..i].to_string())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ParseExprError { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    pool: &'a mut ExprPool,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: &'a [String],
    len: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseExprError> {
        let pos = self.toks.get(self.pos).map_or(self.len, |t| t.0);
        Err(ParseExprError { pos, msg: msg.into() })
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseExprError> {
        if self.peek_op() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn expr(&mut self) -> Result<ExprId, ParseExprError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { self.pool.add(acc, rhs) } else { self.pool.sub(acc, rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ExprId, ParseExprError> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' { self.pool.mul(acc, rhs) } else { self.pool.div(acc, rhs) };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ExprId, ParseExprError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                let e = self.unary()?;
                Ok(self.pool.neg(e))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ExprId, ParseExprError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp = self.unary()?;
        let Some(e) = self.pool.as_const(exp).cloned() else {
            return self.err("exponent must be a constant");
        };
        Ok(self.pool.powr(base, e))
    }

    fn atom(&mut self) -> Result<ExprId, ParseExprError> {
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return self.err("unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Num(s) => match parse_rational(&s) {
                Ok(r) => Ok(self.pool.constant(Exact::rational(r))),
                Err(e) => {
                    self.pos -= 1;
                    self.err(e.to_string())
                }
            },
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Op(c) => {
                self.pos -= 1;
                self.err(format!("unexpected {c:?}"))
            }
            Tok::Ident(name) => {
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    return Ok(self.pool.var(i));
                }
                if name == "sqrt2" {
                    return Ok(self.pool.constant(Exact::sqrt2()));
                }
                let f = match name.as_str() {
                    "exp" => Some(ElemFn::Exp),
                    "ln" | "log" => Some(ElemFn::Ln),
                    "sin" => Some(ElemFn::Sin),
                    "cos" => Some(ElemFn::Cos),
                    "sqrt" => None,
                    _ => {
                        self.pos -= 1;
                        return self.err(format!("unknown name {name:?}"));
                    }
                };
                self.expect('(')?;
                let arg = self.expr()?;
                self.expect(')')?;
                Ok(match f {
                    Some(f) => self.pool.func(f, arg),
                    None => self.pool.powr(arg, Exact::frac(1, 2)),
                })
            }
        }
    }
}

/// Parses `text` with variable `k` named `vars[k]`.
pub fn parse_expr(pool: &mut ExprPool, text: &str, vars: &[String]) -> Result<ExprId, ParseExprError> {
    let toks = tokenize(text)?;
    let mut p = Parser { pool, toks, pos: 0, vars, len: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
