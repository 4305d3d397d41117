//! Text grammar for polynomials.
//!
//! ```text
//! poly    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := integer | integer '/' integer | 'x' index ['^' exponent]
//! ```
//!
//! Whitespace is ignored everywhere. Variables are 1-based (`x0` is rejected).

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::polynomial::{Polynomial, Rational};
use super::PolyError;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> PolyError {
        PolyError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Result<&'a str, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn small(&mut self, what: &str) -> Result<u32, PolyError> {
        let s = self.digits()?;
        s.parse::<u32>()
            .map_err(|_| self.err(format!("{what} out of range: {s}")))
    }

    fn term(&mut self) -> Result<(Monomial, Rational), PolyError> {
        let mut coeff = Rational::one();
        let mut exps: Vec<(u32, u32)> = Vec::new();
        loop {
            match self.peek() {
                Some(b'x') | Some(b'X') => {
                    self.pos += 1;
                    let v = self.small("variable index")?;
                    if v == 0 {
                        return Err(self.err("variables are numbered from 1"));
                    }
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.small("exponent")?
                    } else {
                        1
                    };
                    exps.push((v, e));
                }
                Some(b'0'..=b'9') => {
                    let num: BigInt = self.digits()?.parse().expect("digits");
                    let value = if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den: BigInt = self.digits()?.parse().expect("digits");
                        if den.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        Rational::new(num, den)
                    } else {
                        Rational::from_integer(num)
                    };
                    coeff *= value;
                }
                Some(c) => return Err(self.err(format!("unexpected '{}'", c as char))),
                None => return Err(self.err("unexpected end of input")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_exponents(exps), coeff))
    }
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial, PolyError> {
    let compact: Vec<u8> = text
        .bytes()
        .filter(|b| !b.is_ascii_whitespace())
        .collect();
    let mut cur = Cursor {
        src: &compact,
        pos: 0,
    };
    if compact.is_empty() {
        return Err(cur.err("empty polynomial"));
    }
    let mut poly = Polynomial::zero();
    let mut first = true;
    while cur.peek().is_some() {
        let negative = match cur.peek() {
            Some(b'+') => {
                cur.pos += 1;
                false
            }
            Some(b'-') => {
                cur.pos += 1;
                true
            }
            _ if first => false,
            Some(c) => return Err(cur.err(format!("expected '+' or '-', found '{}'", c as char))),
            None => unreachable!(),
        };
        let (m, c) = cur.term()?;
        poly.add_term(m, if negative { -c } else { c });
        first = false;
    }
    Ok(poly)
}

impl FromStr for Polynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_polynomial(s)
    }
}
