//! Parsing of the element grammar printed by `Display`:
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*" factor)*
//! factor := INT ["/" INT] | "i" | "pi" ["^" ["-"] INT] | NAME ["^" INT] | "(" expr ")"
//! ```
//!
//! Products are taken in the free graded-commutative algebra; callers apply
//! their model's rewrite system afterwards.

use std::sync::Arc;

use num_bigint::BigInt;

use super::element::GradedElement;
use super::monomial::GeneratorTable;
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a Arc<GeneratorTable>,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { column: pos + 1, message: message.into() })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn small_int(&mut self) -> Result<i64> {
        let start = self.pos;
        let neg = self.eat(b'-');
        let n = self.integer()?;
        let v: i64 = match i64::try_from(&n) {
            Ok(v) if v <= u16::MAX as i64 => v,
            _ => return err(start, "exponent out of range"),
        };
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier")
    }

    fn expr(&mut self) -> Result<GradedElement> {
        let mut acc = GradedElement::zero(self.table);
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                false
            } else if first {
                false
            } else {
                break;
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GradedElement> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GradedElement> {
        let t = self.table;
        match self.peek() {
            None => err(self.pos, "unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return err(self.pos, "expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat(b'/') { self.integer()? } else { BigInt::from(1) };
                if den == BigInt::from(0) {
                    return err(self.pos, "zero denominator");
                }
                Ok(GradedElement::scalar(t, Scalar::from_rational(Rational::new(num, den))))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident();
                match name {
                    "i" => Ok(GradedElement::scalar(t, Scalar::i())),
                    "pi" => {
                        let k = if self.eat(b'^') { self.small_int()? } else { 1 };
                        Ok(GradedElement::scalar(t, Scalar::pi_pow(k as i32)))
                    }
                    _ => {
                        let Some(g) = t.index(name) else {
                            return err(start, format!("unknown generator `{name}`"));
                        };
                        let e = if self.eat(b'^') { self.small_int()? } else { 1 };
                        if e < 0 {
                            return err(start, "negative exponent on a generator");
                        }
                        let mut out = GradedElement::one(t);
                        let gen = GradedElement::generator(t, g);
                        for _ in 0..e {
                            out = out.mul(&gen);
                        }
                        Ok(out)
                    }
                }
            }
            Some(c) => err(self.pos, format!("unexpected character `{}`", c as char)),
        }
    }
}

/// Parses an element over `table` in the free algebra.
pub fn parse_element(table: &Arc<GeneratorTable>, src: &str) -> Result<GradedElement> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, table };
    if p.peek().is_none() {
        return err(0, "empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let t = GeneratorTable::new([("x", 0), ("dx", 1), ("dy", 1)]).unwrap();
        let e = parse_element(&t, "-3/2*i*pi^-1*x^2*dx + dy*dx + (1 + i)*pi").unwrap();
        let printed = e.to_string();
        assert_eq!(parse_element(&t, &printed).unwrap(), e);
        assert_eq!(printed, "pi + i*pi - 3/2*i*pi^-1*x^2*dx - dx*dy");
    }

    #[test]
    fn errors_carry_columns() {
        let t = GeneratorTable::new([("x", 0)]).unwrap();
        match parse_element(&t, "x + q") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_element(&t, "1/0").is_err());
        assert!(parse_element(&t, "x +").is_err());
    }
}
