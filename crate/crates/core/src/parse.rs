//! Polynomial expressions in `x` and `y` over `Q`.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*      // "/" only by a nonzero constant
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | "x" | "y" | "(" expr ")"
//! ```
//!
//! Implicit multiplication such as `2x` or `(x)(y)` is rejected.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::poly::Poly;

pub const VARS: [&str; 2] = ["x", "y"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token { tok: Tok::Int(digits.parse().expect("digits")), line: l, column: col });
            continue;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token { tok: Tok::Ident(name), line: l, column: col });
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(Error::Parse {
                        line: l,
                        column: col,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        out.push(Token { tok, line: l, column: col });
        i += 1;
        column += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Parse { line, column, message: message.into() })
    }

    fn zero(&self) -> Poly<Rat> {
        Poly::zero(&VARS, &())
    }

    fn expr(&mut self) -> Result<Poly<Rat>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<Rat>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Parse {
                            line: at.0,
                            column: at.1,
                            message: "division is only allowed by a nonzero constant".into(),
                        });
                    }
                    let c = d.coeff(&crate::poly::Monomial::one(2));
                    acc = acc.scale(&c.inv()?);
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => {
                    return self.err("implicit multiplication is not supported; write `*` explicitly")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly<Rat>> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly<Rat>> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = match self.peek() {
            Some(Tok::Int(n)) => match u32::try_from(n.clone()) {
                Ok(e) if e <= 10_000 => e,
                _ => return self.err("exponent is too large"),
            },
            _ => return self.err("exponent must be a non-negative integer literal"),
        };
        self.pos += 1;
        if self.peek() == Some(&Tok::Caret) {
            return self.err("chained exponents are ambiguous; add parentheses");
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Poly<Rat>> {
        let zero = self.zero();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(zero.constant_like(Rat::from_bigint(n)))
            }
            Some(Tok::Ident(name)) => match VARS.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(zero.var_like(i))
                }
                None => self.err(format!(
                    "unknown identifier `{name}`; only the variables x and y are supported"
                )),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses and expands a polynomial in `x`, `y` with rational coefficients.
pub fn parse_polynomial(text: &str) -> Result<Poly<Rat>> {
    let toks = tokenize(text)?;
    let end = {
        let lines: Vec<&str> = text.split('\n').collect();
        (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1)
    };
    let mut p = Parser { toks, pos: 0, end };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(poly)
}

/// Parses a rational value `p/q`.
pub fn parse_value(text: &str) -> Result<Rat> {
    Rat::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion() {
        let f = parse_polynomial("x*(x*y - 1)").unwrap();
        assert_eq!(f.render(), "x^2*y - x");
        assert_eq!(parse_polynomial("(x+y)^2").unwrap().render(), "x^2 + 2*x*y + y^2");
        assert_eq!(parse_polynomial(" 3/2 * x - -y ").unwrap().render(), "3/2*x + y");
        assert_eq!(parse_polynomial("-x^2").unwrap().render(), "-x^2");
        assert!(parse_polynomial("x - x").unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_polynomial("x^y") {
            Err(Error::Parse { line: 1, column: 3, message }) => {
                assert!(message.contains("non-negative integer literal"))
            }
            other => panic!("{other:?}"),
        }
        match parse_polynomial("x +\n 2z") {
            Err(Error::Parse { line: 2, column: 3, message }) => {
                assert!(message.contains("implicit multiplication"))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_polynomial("x*z"), Err(Error::Parse { column: 3, .. })));
        assert!(parse_polynomial("(x+1").is_err());
        assert!(parse_polynomial("x/y").is_err());
        assert!(parse_polynomial("x/0").is_err());
        assert!(parse_polynomial("x^-1").is_err());
        assert!(parse_polynomial("").is_err());
    }
}
