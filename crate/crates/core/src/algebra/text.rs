//! Polynomial text format.
//!
//! ```text
//! poly := ['+'|'-'] term (('+'|'-') term)*
//! term := coef | coef '*' mono | mono
//! mono := 'T' | 'T^' uint
//! coef := int | int '/' uint        (fractions only in characteristic 0)
//! ```
//!
//! Whitespace is ignored. Printing is canonical: descending degree, nonzero
//! terms only, `1*` and `^1` elided, zero printed as `0`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Coef, FieldSpec};
use super::poly::Poly;
use crate::error::{Error, Result};

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for d in (0..=deg).rev() {
            let c = self.coeff(d);
            if c.is_zero() {
                continue;
            }
            let (negative, magnitude) = match &c {
                Coef::Rational(r) => (r.is_negative(), Coef::Rational(r.abs())),
                Coef::Residue(_) => (false, c.clone()),
            };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, "-")?,
                (false, false) => write!(f, "+")?,
            }
            first = false;
            match d {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}*")?;
                    }
                    if d == 1 {
                        write!(f, "T")?;
                    } else {
                        write!(f, "T^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Parse polynomial text over `field`; see the module docs for the grammar.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Poly> {
        Parser::new(text, field).poly()
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
    field: FieldSpec,
}

impl Parser {
    fn new(text: &str, field: FieldSpec) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser {
            chars,
            at: 0,
            end: text.chars().count(),
            field,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn poly(mut self) -> Result<Poly> {
        if self.peek().is_none() {
            return self.fail("empty polynomial");
        }
        let mut acc: Vec<BigRational> = Vec::new();
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let (coef, deg) = self.term()?;
            if acc.len() <= deg {
                acc.resize(deg + 1, BigRational::zero());
            }
            if negative {
                acc[deg] -= coef;
            } else {
                acc[deg] += coef;
            }
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return self.fail(format!("unexpected '{c}', expected '+' or '-'")),
            }
            self.at += 1;
        }
        let coefs = acc
            .into_iter()
            .map(|r| match self.field.characteristic() {
                0 => Coef::Rational(r),
                _ => self.field.coef_from_int(r.numer()),
            })
            .collect();
        Poly::from_coefs(self.field, coefs)
    }

    fn term(&mut self) -> Result<(BigRational, usize)> {
        match self.peek() {
            Some('T') => Ok((BigRational::one(), self.mono()?)),
            Some(c) if c.is_ascii_digit() => {
                let coef = self.coef()?;
                if self.eat('*') {
                    if self.peek() != Some('T') {
                        return self.fail("expected 'T' after '*'");
                    }
                    Ok((coef, self.mono()?))
                } else {
                    Ok((coef, 0))
                }
            }
            Some(c) => self.fail(format!("unexpected '{c}', expected a coefficient or 'T'")),
            None => self.fail("unexpected end of input, expected a term"),
        }
    }

    fn mono(&mut self) -> Result<usize> {
        self.at += 1; // 'T'
        if !self.eat('^') {
            return Ok(1);
        }
        let start = self.pos();
        let digits = self.digits()?;
        digits.parse::<usize>().map_err(|_| Error::Parse {
            position: start,
            message: format!("exponent {digits} is too large"),
        })
    }

    fn coef(&mut self) -> Result<BigRational> {
        let numer: BigInt = self.digits()?.parse().expect("ascii digits");
        if self.peek() != Some('/') {
            return Ok(BigRational::from_integer(numer));
        }
        if !self.field.is_rational() {
            return self.fail("fractions are only allowed in characteristic 0");
        }
        self.at += 1;
        let denom_pos = self.pos();
        let denom: BigInt = self.digits()?.parse().expect("ascii digits");
        if denom.is_zero() {
            return Err(Error::Parse {
                position: denom_pos,
                message: "zero denominator".into(),
            });
        }
        Ok(BigRational::new(numer, denom))
    }

    fn digits(&mut self) -> Result<String> {
        let mut out = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            out.push(c);
            self.at += 1;
        }
        if out.is_empty() {
            return self.fail("expected digits");
        }
        Ok(out)
    }
}
