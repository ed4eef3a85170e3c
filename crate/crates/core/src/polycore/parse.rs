//! Reader for the canonical polynomial text form (`x^2 + 3*x*y - y`).
//!
//! Accepts sums, differences, products (explicit `*` or juxtaposition of a number
//! and a variable), integer powers, parentheses, and division by nonzero constants.

use num_bigint::BigInt;

use super::field::Coeff;
use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

struct Reader<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::MalformedInput(format!(
            "{msg} at offset {} in {:?}",
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

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if !d.is_unit() {
                        return Err(self.err("division by a non-constant"));
                    }
                    let field = self.ring.field();
                    acc = acc.scale(&field.inv(d.lc().unwrap()));
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' || c == b'(' => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected exponent"));
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            if e > u16::MAX as u32 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .unwrap();
                Ok(self.ring.constant(self.ring.field().from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                self.ring.var_by_name(name).ok_or_else(|| {
                    Error::MalformedInput(format!("unknown variable {name} in ring {}", self.ring))
                })
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

impl Ring {
    /// Parses the canonical text form into a polynomial of this ring.
    pub fn parse_poly(&self, text: &str) -> Result<Poly> {
        let mut r = Reader {
            ring: self,
            src: text.as_bytes(),
            pos: 0,
        };
        if r.peek().is_none() {
            return Err(Error::MalformedInput("empty polynomial".into()));
        }
        let p = r.expr()?;
        if r.peek().is_some() {
            return Err(r.err("trailing input"));
        }
        Ok(p)
    }

    /// Parses a coefficient literal such as `3`, `-2` or `1/2`.
    pub fn parse_coeff(&self, text: &str) -> Result<Coeff> {
        let p = self.parse_poly(text)?;
        if !p.is_constant() {
            return Err(Error::MalformedInput(format!("{text} is not a constant")));
        }
        Ok(p.constant_term())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Field;

    fn ring() -> Ring {
        Ring::grevlex(Field::Rationals, ["x", "y"]).unwrap()
    }

    #[test]
    fn parses_and_prints_canonically() {
        let r = ring();
        let p = r.parse_poly("3x*y - y + x^2").unwrap();
        assert_eq!(p.to_string(), "x^2 + 3*x*y - y");
        assert_eq!(r.parse_poly(&p.to_string()).unwrap(), p);
        assert_eq!(
            r.parse_poly("(x+y)*(x-y)").unwrap().to_string(),
            "x^2 - y^2"
        );
        assert_eq!(r.parse_poly("2/4").unwrap().to_string(), "1/2");
        assert_eq!(r.parse_poly("1/2*x").unwrap().to_string(), "1/2*x");
    }

    #[test]
    fn rejects_bad_input() {
        let r = ring();
        assert!(r.parse_poly("z").is_err());
        assert!(r.parse_poly("x^").is_err());
        assert!(r.parse_poly("x/y").is_err());
        assert!(r.parse_poly("x)").is_err());
        assert!(r.parse_poly("").is_err());
    }
}
