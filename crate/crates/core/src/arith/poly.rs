use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// Coefficients are stored low degree first with trailing zeros trimmed, so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `x - a`
    pub fn linear_root(a: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![-a.into(), BigInt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n`
    pub fn monomial(c: impl Into<BigInt>, n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0 (check `is_zero` where it matters).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc *= a;
            acc += c;
        }
        acc
    }

    pub fn eval_i64(&self, a: i64) -> BigInt {
        self.eval(&BigInt::from(a))
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c)))
    }

    /// `self / (sign(lc) * content)`: primitive with positive leading coefficient.
    pub fn primitive_part(&self) -> Result<IntPoly> {
        let c = self.content()?;
        let c = if self.leading_coeff().is_negative() {
            -c
        } else {
            c
        };
        Ok(self.div_scalar_exact(&c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_ok_and(|c| c.is_one())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Divides every coefficient by `k`; caller guarantees exactness.
    pub fn div_scalar_exact(&self, k: &BigInt) -> IntPoly {
        debug_assert!(self.coeffs.iter().all(|c| (c % k).is_zero()));
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / k).collect(),
        }
    }

    pub fn derivative(&self) -> IntPoly {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division in `Z[x]`: `Some(q)` iff `self = divisor * q` with `q`
    /// integral.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let lc = divisor.leading_coeff();
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "pseudo-division by zero polynomial");
        if self.is_zero() || self.degree() < b.degree() {
            return self.clone();
        }
        let lc = b.leading_coeff();
        let db = b.degree();
        let mut e = self.degree() - db + 1;
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let top = r.leading_coeff();
            let mut coeffs: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc).collect();
            for (j, bc) in b.coeffs.iter().enumerate() {
                coeffs[shift + j] -= &top * bc;
            }
            r = IntPoly::from_coeffs(coeffs);
            e -= 1;
        }
        r.scale(&num_traits::pow(lc, e))
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().unwrap_or_default();
        }
        if other.is_zero() {
            return self.primitive_part().unwrap_or_default();
        }
        let mut a = self.primitive_part().unwrap();
        let mut b = other.primitive_part().unwrap();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() {
                r
            } else {
                r.primitive_part().unwrap()
            };
        }
        a
    }
}

impl Ord for IntPoly {
    /// Degree first, then coefficients from the constant term upward.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Add for IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -&self
    }
}

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * &p)
    }
}

impl<'a> std::iter::Product<&'a IntPoly> for IntPoly {
    fn product<I: Iterator<Item = &'a IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * p)
    }
}

/// Writes `c*x^i` terms from the top degree down: `x^3 - 2x^2 + 2x + 3`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[0, 1, 1]).eval_i64(3), 12.into());
        assert_eq!(p(&[9, 2, 6, 1]).eval_i64(2), 45.into());
        assert_eq!(p(&[-2, 26, -62, 42, -11, 1]).eval_i64(0), (-2).into());
    }

    #[test]
    fn content_examples() {
        let a = p(&[2, 4, 6]);
        assert_eq!(a.content().unwrap(), 2.into());
        assert_eq!(a.primitive_part().unwrap(), p(&[1, 2, 3]));
        assert_eq!(p(&[0, 1, 1]).content().unwrap(), 1.into());
        let b = p(&[0, -3]);
        assert_eq!(b.content().unwrap(), 3.into());
        assert_eq!(b.primitive_part().unwrap(), p(&[0, 1]));
        assert_eq!(IntPoly::zero().content(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn trimming_and_degree() {
        let a = IntPoly::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(a.degree(), 1);
        assert!(IntPoly::from_i64s(&[0, 0]).is_zero());
    }

    #[test]
    fn exact_division() {
        let f = p(&[27, 24, 4, 20, -8, 4, 1]);
        let g1 = p(&[3, 2, -2, 1]);
        let g2 = p(&[9, 2, 6, 1]);
        assert_eq!(&g1 * &g2, f);
        assert_eq!(f.div_exact(&g1), Some(g2.clone()));
        assert_eq!(f.div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[0, 0, 2]).div_exact(&p(&[0, 2])), Some(p(&[0, 1])));
        assert_eq!(p(&[0, 0, 3]).div_exact(&p(&[0, 2])), None);
    }

    #[test]
    fn gcd_examples() {
        let a = &p(&[-1, 1]) * &p(&[1, 1]);
        let b = &p(&[-1, 1]) * &p(&[2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let c = &p(&[1, 2]).pow(2) * &p(&[3, 0, 1]);
        assert_eq!(c.gcd(&c.derivative()), p(&[1, 2]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 1])), IntPoly::one());
        assert_eq!(p(&[0, 6]).gcd(&p(&[0, 0, 4])), p(&[0, 1]));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p(&[5, -3, 0, 7, 2]);
        let b = p(&[1, 0, 3]);
        let r = a.pseudo_rem(&b);
        assert!(r.degree() < b.degree() || r.is_zero());
        // lc(b)^(deg a - deg b + 1) * a - r must be divisible by b
        let lhs = a.scale(&BigInt::from(27)) - r;
        assert!(lhs.div_exact(&b).is_some());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[3, 2, -2, 1]).to_string(), "x^3 - 2x^2 + 2x + 3");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(p(&[-5]).to_string(), "-5");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn ordering_is_degree_first() {
        assert!(p(&[5, 1]) < p(&[0, 0, 1]));
        assert!(p(&[-2, 1]) < p(&[3, 1]));
    }
}
