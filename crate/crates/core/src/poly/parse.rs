//! Recursive-descent parser for the textual polynomial syntax.
//!
//! ```text
//! expr   := ["+" | "-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := atom ["^" INT]
//! atom   := INT ["/" INT] | NAME | "C(" NAME [("+" | "-") INT] "," INT ")" | "(" expr ")"
//! ```
//!
//! Names start with an ASCII letter and continue with letters, digits or `_`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{binomial_monomial, Polynomial, Rational};
use crate::{Error, Result};

pub fn parse_polynomial(input: &str) -> Result<Polynomial> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(Error::parse(0, "empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::parse(p.pos, format!("unexpected '{}'", p.peek_char())));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or('?')
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else if self.at_end() {
            Err(Error::parse(self.pos, format!("expected '{}' but input ended", c as char)))
        } else {
            Err(Error::parse(
                self.pos,
                format!("expected '{}' but found '{}'", c as char, self.peek_char()),
            ))
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::parse(at, "exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            None => Err(Error::parse(self.pos, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.eat(b'/') {
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::parse(at, "zero denominator"));
                    }
                    Ok(Polynomial::constant(Rational::new(n, d)))
                } else {
                    Ok(Polynomial::constant(Rational::from_integer(n)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.name();
                let save = self.pos;
                if name == "C" && self.eat(b'(') {
                    return self.binomial();
                }
                self.pos = save;
                Ok(Polynomial::var(&name))
            }
            Some(_) => Err(Error::parse(
                self.pos,
                format!("unexpected '{}'", self.peek_char()),
            )),
        }
    }

    fn binomial(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Err(Error::parse(self.pos, "expected a variable name"));
        }
        let var = self.name();
        let mut offset = BigInt::zero();
        if self.eat(b'-') {
            self.skip_ws();
            offset = self.integer()?;
        } else if self.eat(b'+') {
            self.skip_ws();
            offset = -self.integer()?;
        }
        self.expect(b',')?;
        self.skip_ws();
        let at = self.pos;
        let k: u32 = self
            .integer()?
            .try_into()
            .map_err(|_| Error::parse(at, "binomial index too large"))?;
        self.expect(b')')?;
        Ok(binomial_monomial(&var, &offset, k))
    }

    fn name(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().expect("ascii digits form a valid integer"))
    }
}
