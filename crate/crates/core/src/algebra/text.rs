//! Parser shared by the polynomial and Laurent-class text formats.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::shape::VarId;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ParsedTerm {
    pub coeff: Rational,
    pub vars: Vec<(VarId, i64)>,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }

    fn index(&mut self) -> Result<usize> {
        let d = self.digits()?;
        d.parse().or_else(|_| self.err("index too large"))
    }

    fn signed_exponent(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let d = self.digits()?;
        let v: i64 = d.parse().or_else(|_| self.err("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }
}

/// Parses `term (('+'|'-') term)*`; whitespace is ignored everywhere.
pub(crate) fn parse_terms(input: &str) -> Result<Vec<ParsedTerm>> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cur = Cursor { bytes: compact.as_bytes(), pos: 0 };
    let mut out = Vec::new();
    if cur.peek().is_none() {
        return cur.err("empty input");
    }
    let mut first = true;
    while cur.peek().is_some() {
        let mut negative = false;
        let mut signs = 0;
        while let Some(b @ (b'+' | b'-')) = cur.peek() {
            negative ^= b == b'-';
            signs += 1;
            cur.pos += 1;
        }
        if !first && signs == 0 {
            return cur.err("expected '+' or '-' between terms");
        }
        first = false;
        let mut term = parse_product(&mut cur)?;
        if negative {
            term.coeff = -term.coeff;
        }
        out.push(term);
    }
    Ok(out)
}

fn parse_product(cur: &mut Cursor<'_>) -> Result<ParsedTerm> {
    let mut coeff = Rational::one();
    let mut vars = Vec::new();
    loop {
        match cur.peek() {
            Some(b'0'..=b'9') => {
                let num: BigInt = cur.digits()?.parse().unwrap();
                let den: BigInt = if cur.peek() == Some(b'/') {
                    cur.pos += 1;
                    cur.digits()?.parse().unwrap()
                } else {
                    BigInt::one()
                };
                if den.is_zero() {
                    return cur.err("zero denominator");
                }
                coeff *= Rational::new(num, den);
            }
            Some(b'x') => {
                cur.pos += 1;
                cur.expect(b'[')?;
                let row = cur.index()?;
                cur.expect(b',')?;
                let col = cur.index()?;
                cur.expect(b']')?;
                vars.push((VarId::X { row, col }, exponent(cur)?));
            }
            Some(b'T') => {
                cur.pos += 1;
                cur.expect(b'[')?;
                let k = cur.index()?;
                cur.expect(b']')?;
                vars.push((VarId::T(k), exponent(cur)?));
            }
            _ => return cur.err("expected a coefficient or a variable"),
        }
        if cur.peek() == Some(b'*') {
            cur.pos += 1;
        } else {
            return Ok(ParsedTerm { coeff, vars });
        }
    }
}

fn exponent(cur: &mut Cursor<'_>) -> Result<i64> {
    if cur.peek() == Some(b'^') {
        cur.pos += 1;
        cur.signed_exponent()
    } else {
        Ok(1)
    }
}

impl super::Poly {
    /// Reads the canonical text form (or any whitespace variant of it).
    pub fn parse(shape: super::Shape, input: &str) -> Result<super::Poly> {
        let mut p = super::Poly::zero(shape);
        for term in parse_terms(input)? {
            let mut exps = vec![0u16; shape.num_vars()];
            for (var, e) in term.vars {
                let idx = shape.index_of(var)?;
                let e = u16::try_from(e).map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("exponent {e} of {var} must be a nonnegative integer"),
                })?;
                exps[idx] += e;
            }
            p.add_term(super::Monomial::from_exponents(exps), term.coeff);
        }
        Ok(p)
    }
}
