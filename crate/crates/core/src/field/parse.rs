//! Recursive-descent parser for rational-function strings such as
//! `(1 - t + q - q*t)/(1 - q*t)`.

use num_bigint::BigInt;

use super::params::{Params, Symbol};
use super::poly::ParamPolynomial;
use super::rational::RationalFunction;
use crate::error::{Error, Result};

/// Parses an expression built from integers, symbols, `+ - * / ^` and
/// parentheses into a canonical [`RationalFunction`] over `params`.
pub fn parse(s: &str, params: Params) -> Result<RationalFunction> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        params,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    params: Params,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{} at offset {} in `{}`",
            msg,
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
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

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = super::rf_arith(super::FieldOp::Div, &acc, &d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RationalFunction> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.uint()?;
            let e: u32 = n
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }

    fn primary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(RationalFunction::from_poly(ParamPolynomial::constant(self.params, n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let sym: Symbol = name.parse()?;
                RationalFunction::symbol(self.params, sym)
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_canonical_strings() {
        for s in [
            "(1 - t + q - q*t)/(1 - q*t)",
            "q*t^2 - 3",
            "2/(1 + alpha)",
            "-q/(1 - q*t^2)",
            "0",
            "1/2",
        ] {
            let params = if s.contains("alpha") { Params::ALPHA } else { Params::QT };
            let v = parse(s, params).unwrap();
            let again = parse(&v.to_string(), params).unwrap();
            assert_eq!(v, again, "{}", s);
        }
    }

    #[test]
    fn canonical_print() {
        let v = parse("(t - 1)/(q*t - 1)", Params::QT).unwrap();
        assert_eq!(v.to_string(), "(1 - t)/(1 - q*t)");
        let v = parse("2/(alpha + 1)", Params::ALPHA).unwrap();
        assert_eq!(v.to_string(), "2/(1 + alpha)");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("q +", Params::QT).is_err());
        assert!(parse("z", Params::QT).is_err());
        assert!(parse("alpha", Params::QT).is_err());
        assert!(parse("(q", Params::QT).is_err());
        assert!(parse("1/0", Params::QT).is_err());
    }
}
