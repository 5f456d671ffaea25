//! Recursive-descent parser for the ASCII polynomial format.
//!
//! Grammar (whitespace insignificant):
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := '(' expr ')' | '-' factor | rational | variable
//! ```
//! Rational literals are `123` or `123/456`; variables come from the target
//! space (`x y z` or `u v`).

use super::{Polynomial, VarSpace};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    space: VarSpace,
}

pub fn parse(src: &str, space: VarSpace) -> Result<Polynomial> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        space,
    };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty expression"));
    }
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
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

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.uint()?;
            if n > 64 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.bump() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_alphabetic() => self.variable(),
            _ => Err(self.err("expected a number, variable, or '('")),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a non-negative integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn bigint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .expect("digits"))
    }

    fn rational(&mut self) -> Result<Polynomial> {
        let numer = self.bigint()?;
        let q = if self.peek() == Some(b'/') {
            self.pos += 1;
            let denom = self.bigint()?;
            if denom.is_zero() {
                return Err(self.err("zero denominator"));
            }
            BigRational::new(numer, denom)
        } else {
            BigRational::from(numer)
        };
        Ok(Polynomial::constant(self.space, q))
    }

    fn variable(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let c = self.src[self.pos] as char;
        let names = self.space.var_names();
        match names.iter().position(|n| n.starts_with(c)) {
            Some(i) => {
                self.pos += 1;
                let mut exps = [0u32; 3];
                exps[i] = 1;
                Ok(Polynomial::monomial(
                    self.space,
                    exps,
                    BigRational::from(BigInt::from(1)),
                ))
            }
            None => Err(self.err(&format!(
                "unknown variable '{c}' (expected one of {})",
                names.join(", ")
            ))),
        }
    }
}
