//! Parser for GF(2)(s,t) element strings such as `(s^2*t+1)/(s+t)`.

use super::gf2poly::Poly2;
use super::gf2rat::Gf2Rat;
use super::{Field, FieldSpec, ScalarError};

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn err(&self, reason: &str) -> ScalarError {
        ScalarError::Parse {
            input: self.input.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<u64, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.err("expected integer"))
    }

    fn expr(&mut self) -> Result<Gf2Rat, ScalarError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            let _ = c;
            self.pos += 1;
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Gf2Rat, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.pos += 1;
                    acc = acc.div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Gf2Rat, ScalarError> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            if e > 4096 {
                return Err(self.err("exponent too large"));
            }
            let mut acc = Gf2Rat::one();
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Gf2Rat, ScalarError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Gf2Rat::from_i64((self.integer()? % 2) as i64)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.names.iter().position(|n| *n == name) {
                    Some(0) => Ok(Gf2Rat::from_poly(Poly2::s())),
                    Some(_) => Ok(Gf2Rat::from_poly(Poly2::t())),
                    None => Err(ScalarError::FieldMismatch(format!(
                        "indeterminate {name:?} is not one of {:?}",
                        self.names
                    ))),
                }
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

pub(super) fn parse_gf2(input: &str, spec: &FieldSpec) -> Result<Gf2Rat, ScalarError> {
    let mut parser = Parser {
        input,
        chars: input.chars().collect(),
        pos: 0,
        names: spec.indeterminates(),
    };
    let value = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.err("trailing input"));
    }
    Ok(value)
}
