//! Text grammar for polynomials.
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | var ['^' int]
//! var    := 'x' | 'y' | 't'
//! ```
//!
//! Whitespace is ignored. The serializer prints terms in descending grevlex
//! order with unit coefficients and unit exponents elided, so that
//! `parse_polynomial(&p.to_string()) == p` for every polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{Monomial, MultiPoly, Rational, UniPoly, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn factor(&mut self, coef: &mut Rational, mono: &mut Monomial) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    *coef *= Rational::new(n, d);
                } else {
                    *coef *= Rational::from_integer(n);
                }
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let v = match Var::from_name(&(c as char).to_string()) {
                    Some(v) => v,
                    None => return self.err(format!("unknown variable '{}'", c as char)),
                };
                self.pos += 1;
                let mut e = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let n = self.integer()?;
                    e = match u32::try_from(n) {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent too large"),
                    };
                }
                mono.0[v.index()] += e;
                Ok(())
            }
            Some(_) => self.err("expected number or variable"),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self, out: &mut MultiPoly, sign: i32) -> Result<(), ParseError> {
        let mut coef = Rational::from_integer(BigInt::from(sign));
        let mut mono = Monomial::ONE;
        self.factor(&mut coef, &mut mono)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut coef, &mut mono)?;
        }
        out.add_term(mono, coef);
        Ok(())
    }

    fn poly(&mut self) -> Result<MultiPoly, ParseError> {
        let mut out = MultiPoly::zero();
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return self.err("empty polynomial"),
            _ => {}
        }
        self.term(&mut out, sign)?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.term(&mut out, 1)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.term(&mut out, -1)?;
                }
                None => return Ok(out),
                Some(_) => return self.err("expected '+' or '-'"),
            }
        }
    }
}

/// Parse the text polynomial grammar.
pub fn parse_polynomial(text: &str) -> Result<MultiPoly, ParseError> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
    }
    .poly()
}

impl std::str::FromStr for MultiPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_polynomial(s)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", v)?;
        } else {
            write!(f, "{}^{}", v, e)?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_polynomial(&text).map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let p = MultiPoly::deserialize(d)?;
        UniPoly::from_multipoly(&p, Var::T).ok_or_else(|| serde::de::Error::custom("expected a polynomial in t"))
    }
}
