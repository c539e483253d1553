//! Text grammar for polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer ['/' integer] | variable | '(' expr ')'
//! ```
//!
//! Whitespace is ignored between tokens.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::MultiPoly;

pub fn parse_poly(text: &str, vars: &[String], field: Field) -> Result<MultiPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        field,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a comma-separated list of polynomials. Commas inside parentheses
/// do not split.
pub fn parse_poly_list(text: &str, vars: &[String], field: Field) -> Result<Vec<MultiPoly>> {
    split_top_level(text)
        .into_iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_poly(s, vars, field))
        .collect()
}

pub(crate) fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' | ';' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
    field: Field,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.field, self.n());
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let value = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.integer()?;
                    if den == BigInt::from(0) {
                        return Err(self.error("zero denominator"));
                    }
                    self.field
                        .from_ratio(&num, &den)
                        .map_err(|_| self.error("denominator vanishes in the field"))?
                } else {
                    self.field.from_bigint(&num)
                };
                Ok(MultiPoly::constant(self.field, self.n(), value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                Ok(MultiPoly::var(self.field, self.n(), idx))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().expect("digits parse"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{default_vars, Monomial};

    fn q(s: &str) -> Result<MultiPoly> {
        parse_poly(s, &default_vars(3), Field::Rational)
    }

    #[test]
    fn sum_of_squares() {
        let f = q("x^2 + y^2 + z^2").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.homogeneous_degree(), Some(2));
    }

    #[test]
    fn commuting_product_cancels() {
        assert!(q("x*y - y*x").unwrap().is_zero());
    }

    #[test]
    fn binomial_expansion() {
        let f = q("(x+y+z)^2").unwrap();
        assert_eq!(f.len(), 6);
        let two = Field::Rational.from_i64(2);
        assert_eq!(f.coeff(&Monomial::new(vec![1, 1, 0])), two);
        assert_eq!(f.coeff(&Monomial::new(vec![0, 1, 1])), two);
        assert!(f.coeff(&Monomial::new(vec![2, 0, 0])).is_one());
    }

    #[test]
    fn rational_coefficients() {
        let f = q("z^6 - 1/2*x^3*y^3").unwrap();
        assert_eq!(f.to_string(), "-1/2*x^3*y^3 + z^6");
    }

    #[test]
    fn errors_carry_position() {
        match q("x + * y") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(q("x + w"), Err(Error::UnknownVariable("w".into())));
        assert!(q("(x + y").is_err());
        assert!(q("x^").is_err());
        assert!(q("1/0").is_err());
    }

    #[test]
    fn list_splitting_respects_parentheses() {
        let v = parse_poly_list("x^3, (x+y)^2 , z", &default_vars(3), Field::Rational).unwrap();
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn prime_field_coefficients() {
        let f = parse_poly("3/2*x1 + 5", &default_vars(2), Field::prime(7).unwrap()).unwrap();
        // 3/2 = 3 * 4 = 12 = 5 (mod 7)
        assert_eq!(f.to_string(), "5*x1 + 5");
    }
}
