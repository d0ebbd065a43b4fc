//! Text form of polynomials in `x`.
//!
//! ```text
//! input := sign? ( '(' poly ')' ( '/' int )? | poly )
//! poly  := sign? term ( ( '+' | '-' ) term )*
//! term  := int ( '/' int )? '*'? ( 'x' ( '^' int )? )? ( '/' int )?
//!        | 'x' ( '^' int )? ( '/' int )?
//! ```
//!
//! Whitespace is ignored. Rational coefficients are cleared into a single
//! denominator, so `1/2x^2 + 1/2x` and `(x^2+x)/2` parse to the same value.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::poly::IntPoly;
use crate::error::{Error, Result};
use crate::ivp::IvpPoly;

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
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

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn positive_int(&mut self) -> Result<BigInt> {
        let at = self.peek_pos();
        let n = self.int()?;
        if n.is_zero() {
            return Err(Error::Parse {
                position: at,
                message: "division by zero".into(),
            });
        }
        Ok(n)
    }

    fn peek_pos(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn exponent(&mut self) -> Result<usize> {
        let at = self.peek_pos();
        let n = self.int()?;
        usize::try_from(&n).map_err(|_| Error::Parse {
            position: at,
            message: "exponent too large".into(),
        })
    }

    /// One term, returned as `(power, coefficient)`.
    fn term(&mut self) -> Result<(usize, BigRational)> {
        let mut coeff = BigRational::one();
        let mut has_coeff = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.int()?;
            let den = if self.eat('/') {
                self.positive_int()?
            } else {
                BigInt::one()
            };
            coeff = BigRational::new(num, den);
            has_coeff = true;
            if self.eat('*') && !matches!(self.peek(), Some('x' | 'X')) {
                return self.error("expected `x` after `*`");
            }
        }
        let mut power = 0;
        if matches!(self.peek(), Some('x' | 'X')) {
            self.pos += 1;
            power = if self.eat('^') { self.exponent()? } else { 1 };
        } else if !has_coeff {
            return self.error("expected a term");
        }
        if power > 0 && self.eat('/') {
            coeff /= BigRational::from_integer(self.positive_int()?);
        }
        Ok((power, coeff))
    }

    fn poly(&mut self) -> Result<BTreeMap<usize, BigRational>> {
        let mut terms: BTreeMap<usize, BigRational> = BTreeMap::new();
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let (power, c) = self.term()?;
            let c = if negative { -c } else { c };
            *terms.entry(power).or_insert_with(BigRational::zero) += c;
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(terms);
            }
        }
    }

    fn input(&mut self) -> Result<IvpPoly> {
        let start = self.pos;
        let negative = self.eat('-');
        let (terms, outer, flip) = if self.eat('(') {
            let terms = self.poly()?;
            if !self.eat(')') {
                return self.error("expected `)`");
            }
            let outer = if self.eat('/') {
                self.positive_int()?
            } else {
                BigInt::one()
            };
            (terms, outer, negative)
        } else {
            self.pos = start;
            (self.poly()?, BigInt::one(), false)
        };
        if self.peek().is_some() {
            return self.error("unexpected trailing input");
        }
        let lcm = terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let degree = terms.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        for (power, c) in terms {
            coeffs[power] = (c * BigRational::from_integer(lcm.clone())).to_integer();
        }
        let g = IntPoly::from_coeffs(coeffs);
        IvpPoly::new(if flip { -g } else { g }, lcm * outer)
    }
}

pub fn parse_polynomial(text: &str) -> Result<IvpPoly> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    parser.input()
}

impl FromStr for IvpPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

/// Integer polynomial in the same grammar; fails on any denominator.
pub fn parse_int_poly(text: &str) -> Result<IntPoly> {
    let f = parse_polynomial(text)?;
    if !f.d().is_one() {
        return Err(Error::Parse {
            position: 0,
            message: format!(
                "expected an integer polynomial, found denominator {}",
                f.d()
            ),
        });
    }
    Ok(f.signed_numerator())
}
