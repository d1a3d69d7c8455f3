//! Infix polynomial syntax such as `c1^2 - 3*c2` or `-(chi^2*p1' + p2')`.
//!
//! ```text
//! polynomial = [ sign ] term { sign term } ;
//! sign       = "+" | "-" ;
//! term       = factor { "*" factor } ;
//! factor     = atom [ "^" integer ] ;
//! atom       = number | identifier | "(" polynomial ")" ;
//! number     = integer [ "/" integer ] ;
//! integer    = digit { digit } ;
//! identifier = letter { letter | digit | "_" | "'" } ;
//! ```
//!
//! Whitespace is allowed between tokens.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::gca::{AlgebraRef, GcaElement};
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyError {
    /// byte offset into the parsed text
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for PolyError {}

struct Parser<'a> {
    alg: &'a AlgebraRef,
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn polynomial(&mut self) -> Result<GcaElement, PolyError> {
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
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

    fn term(&mut self) -> Result<GcaElement, PolyError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GcaElement, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.pos;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| PolyError {
                offset: at,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<GcaElement, PolyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.polynomial()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let d = if self.eat('/') {
                    let at = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(PolyError {
                            offset: at,
                            message: "zero denominator".into(),
                        });
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(GcaElement::scalar(self.alg, Q::new(n, d)))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek_raw(), Some(c) if c.is_alphanumeric() || c == '_' || c == '\'') {
                    self.pos += self.peek_raw().map_or(1, char::len_utf8);
                }
                let name = &self.src[start..self.pos];
                GcaElement::named(self.alg, name).map_err(|_| PolyError {
                    offset: start,
                    message: format!("unknown generator `{name}`"),
                })
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` as an element of `alg`.
pub fn parse_polynomial(alg: &AlgebraRef, text: &str) -> Result<GcaElement, PolyError> {
    let mut p = Parser { alg, src: text, pos: 0 };
    if p.peek().is_none() {
        return p.err("empty polynomial");
    }
    let e = p.polynomial()?;
    if let Some(c) = p.peek() {
        return p.err(format!("unexpected `{c}`"));
    }
    Ok(e)
}
