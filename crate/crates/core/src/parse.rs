//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | var ['^' int] | '(' poly ')' ['^' int]
//! var    := ident ['[' int (',' int)* ']']
//! ```
//!
//! Whitespace is insignificant. Indexed variable names are normalized to the
//! form `x[1,2]` before lookup.

use num_bigint::BigInt;

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::ring::Ring;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

pub(crate) fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let poly = p.poly()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

impl Parser<'_> {
    fn error(&self, message: &str) -> AlgebraError {
        AlgebraError::Parse {
            position: self.pos,
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as an integer"))
    }

    fn small_exponent(&mut self) -> Result<u32> {
        let at = self.pos;
        let e = self.integer()?;
        u32::try_from(e).map_err(|_| AlgebraError::Parse {
            position: at,
            message: "exponent too large".into(),
        })
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(AlgebraError::Parse {
                            position: at,
                            message: "zero denominator".into(),
                        });
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(Polynomial::constant(self.ring, Rational::from_bigints(num, den)?))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                if self.eat(b'^') {
                    let e = self.small_exponent()?;
                    Ok(inner.pow(e))
                } else {
                    Ok(inner)
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                let name = self.variable_name()?;
                let var = self.ring.var_index(&name).map_err(|_| AlgebraError::Parse {
                    position: start,
                    message: format!("unknown variable `{name}`"),
                })?;
                let e = if self.eat(b'^') { self.small_exponent()? } else { 1 };
                Ok(Polynomial::term(
                    self.ring,
                    Monomial::var(self.ring.num_vars(), var, e),
                    Rational::one(),
                ))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn variable_name(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let mut name = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii identifier")
            .to_string();
        if self.eat(b'[') {
            let mut idx = vec![self.integer()?.to_string()];
            while self.eat(b',') {
                idx.push(self.integer()?.to_string());
            }
            if !self.eat(b']') {
                return Err(self.error("expected `]`"));
            }
            name.push('[');
            name.push_str(&idx.join(","));
            name.push(']');
        }
        Ok(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_indexed_variables() {
        let r = Ring::new(&[("x[1,1]", 2), ("x[1,2]", 2), ("x[2,2]", 2)]).unwrap();
        let f = Polynomial::parse("x[1,1]*x[2,2] - x[1,2]^2", &r).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.to_string(), "-x[1,2]^2 + x[1,1]*x[2,2]");
        let g = Polynomial::parse(" x[ 1 , 1 ] * x[2,2]-x[1,2] ^ 2 ", &r).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parses_rational_coefficients() {
        let r = Ring::new(&[("a", 1), ("b", 1)]).unwrap();
        let f = Polynomial::parse("3/2*a^2*b - b", &r).unwrap();
        assert_eq!(f.num_terms(), 2);
        let mut coeffs: Vec<_> = f.terms().map(|(_, c)| c.clone()).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![Rational::from(-1), Rational::new(3, 2).unwrap()]);
        assert!(Polynomial::parse("0", &r).unwrap().is_zero());
        assert_eq!(
            Polynomial::parse("(a+b)^2", &r).unwrap(),
            Polynomial::parse("a^2+2*a*b+b^2", &r).unwrap()
        );
    }

    #[test]
    fn reports_positions() {
        let r = Ring::new(&[("a", 1)]).unwrap();
        match Polynomial::parse("a + * a", &r) {
            Err(AlgebraError::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        match Polynomial::parse("a + zz", &r) {
            Err(AlgebraError::Parse { position, message }) => {
                assert_eq!(position, 4);
                assert!(message.contains("zz"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Polynomial::parse("1/0", &r).is_err());
        assert!(Polynomial::parse("a a", &r).is_err());
    }
}
