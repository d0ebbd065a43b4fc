//! Candidate elements `f = g/d` of `Int(S, Z)`: membership, fixed divisors and
//! image primitivity.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::poly::IntPoly;
use crate::arith::primes::{factor_integer, is_square_free, primes_up_to};
use crate::arith::valuation::{valuation_unchecked, Valuation};
use crate::error::{Error, Result};
use crate::options::{Execution, Options};
use crate::par;
use crate::sequences::{build_d_sequence_with, build_pi_sequence, DSequence};
use crate::subset::{SubsetKind, SubsetSpec};

/// `f = unit * g / d` in lowest terms: `d >= 1`, `g` has a positive leading
/// coefficient and `gcd(content(g), d) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IvpPoly {
    g: IntPoly,
    d: BigInt,
    unit: i8,
}

impl IvpPoly {
    pub fn new(g: IntPoly, d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if d.is_zero() {
            return Err(Error::InvalidModulus(d));
        }
        let mut unit: i8 = 1;
        let mut g = g;
        if g.leading_coeff().is_negative() {
            g = -g;
            unit = -unit;
        }
        if d.is_negative() {
            unit = -unit;
        }
        let d = d.abs();
        let c = g.content()?.gcd(&d);
        Ok(IvpPoly {
            g: g.div_scalar_exact(&c),
            d: d / c,
            unit,
        })
    }

    pub fn from_int_poly(g: IntPoly) -> Result<Self> {
        Self::new(g, 1)
    }

    pub fn g(&self) -> &IntPoly {
        &self.g
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// `1` or `-1`.
    pub fn unit(&self) -> i8 {
        self.unit
    }

    pub fn degree(&self) -> usize {
        self.g.degree()
    }

    /// `unit * g`.
    pub fn signed_numerator(&self) -> IntPoly {
        if self.unit < 0 {
            -&self.g
        } else {
            self.g.clone()
        }
    }

    pub fn to_rational_coeffs(&self) -> Vec<BigRational> {
        let d = &self.d;
        self.signed_numerator()
            .coeffs()
            .iter()
            .map(|c| BigRational::new(c.clone(), d.clone()))
            .collect()
    }

    pub fn eval(&self, a: &BigInt) -> BigRational {
        BigRational::new(self.signed_numerator().eval(a), self.d.clone())
    }
}

impl fmt::Display for IvpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.unit < 0 { "-" } else { "" };
        match (self.unit < 0, self.d.is_one()) {
            (false, true) => write!(f, "{}", self.g),
            (true, true) => write!(f, "-({})", self.g),
            _ => write!(f, "{sign}({})/{}", self.g, self.d),
        }
    }
}

/// Where integrality of `f` fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipWitness {
    /// Prime `p` with `p^v_p(d)` not dividing `g` at the points below.
    pub prime: u64,
    /// Index into the d-sequence.
    pub index: usize,
    /// d-sequence point (not necessarily in `S`).
    pub point: BigInt,
    pub value: BigInt,
    /// Element of `S` at which `f` is not integral.
    pub element: BigInt,
    pub element_value: BigInt,
}

impl fmt::Display for MembershipWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a={} (g(a)={} not divisible by the {}-part of d)",
            self.element, self.element_value, self.prime
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub witness: Option<MembershipWitness>,
    /// Absent when `d = 1`.
    pub dsequence: Option<DSequence>,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn is_member(f: &IvpPoly, s: &SubsetSpec) -> Result<Membership> {
    is_member_with(f, s, &Options::default())
}

/// Membership through a d-sequence of length `deg f`: `f` is in `Int(S, Z)`
/// iff `d | g(a_i)` for every point. With a square-free `d` and the shortcut
/// enabled, prime `p` is checked only at indices `0..=min(s_p, deg f)`.
pub fn is_member_with(f: &IvpPoly, s: &SubsetSpec, options: &Options) -> Result<Membership> {
    if f.d.is_one() {
        return Ok(Membership {
            witness: None,
            dsequence: None,
        });
    }
    let k = f.degree();
    let dseq = build_d_sequence_with(s, &f.d, k, options.execution)?;
    let factors = factor_integer(&f.d)?;
    let shortcut = options.square_free_shortcut && is_square_free(&factors);
    let bounds: Vec<usize> = factors
        .iter()
        .map(|&(p, _)| {
            if shortcut {
                (s.s_pi(p).min(k as u64)) as usize
            } else {
                k
            }
        })
        .collect();
    for (i, a) in dseq.elements().iter().enumerate() {
        let value = f.g.eval(a);
        for (&(p, e), &bound) in factors.iter().zip(&bounds) {
            if i > bound || valuation_unchecked(&value, p) >= Valuation::Finite(e) {
                continue;
            }
            let pi = &dseq.component(p).expect("one component per prime").pi;
            let (element, element_value) = pi
                .elements()
                .iter()
                .map(|u| (u.clone(), f.g.eval(u)))
                .find(|(_, v)| valuation_unchecked(v, p) < Valuation::Finite(e))
                .expect("a pi-sequence detects every failing prime");
            return Ok(Membership {
                witness: Some(MembershipWitness {
                    prime: p,
                    index: i,
                    point: a.clone(),
                    value,
                    element,
                    element_value,
                }),
                dsequence: Some(dseq),
            });
        }
    }
    Ok(Membership {
        witness: None,
        dsequence: Some(dseq),
    })
}

pub fn fixed_divisor(g: &IntPoly, s: &SubsetSpec) -> Result<BigInt> {
    fixed_divisor_with(g, s, Execution::default())
}

/// gcd of `g(s)` over `s` in `S` (zero only if `g` vanishes on a finite `S`).
///
/// For the primitive part `h` of `g`, a prime can divide every value only if
/// `S` meets at most `deg h` classes modulo it, so the candidates are the
/// primes up to `2 deg h` and the primes of the progression step. Each
/// surviving prime's exponent is the least valuation of `h` along a
/// π-sequence of length `deg h`.
pub fn fixed_divisor_with(g: &IntPoly, s: &SubsetSpec, execution: Execution) -> Result<BigInt> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let SubsetKind::Finite(elements) = s.kind() {
        return Ok(elements
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(&g.eval(x))));
    }
    let content = g.content()?;
    let h = g.primitive_part()?;
    let k = h.degree();
    if k == 0 {
        return Ok(content);
    }
    let sample = s
        .enumerate(k + 1)
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(&h.eval(x)));
    let mut candidates = primes_up_to(2 * k as u64);
    if let SubsetKind::Ap { a, .. } = s.kind() {
        for (p, _) in factor_integer(&a.gcd(&sample))? {
            if !candidates.contains(&p) {
                candidates.push(p);
            }
        }
    }
    candidates.retain(|&p| (&sample % p).is_zero());
    candidates.sort_unstable();
    let parts = par::try_map(&candidates, execution, |&p| -> Result<BigInt> {
        let pi = build_pi_sequence(s, p, k)?;
        let e = pi
            .elements()
            .iter()
            .map(|u| valuation_unchecked(&h.eval(u), p))
            .min()
            .unwrap();
        Ok(match e {
            Valuation::Finite(e) => num_traits::pow(BigInt::from(p), e as usize),
            Valuation::Infinite => {
                unreachable!("a nonzero polynomial of degree k has at most k roots")
            }
        })
    })?;
    Ok(parts.into_iter().fold(content, |acc, x| acc * x))
}

/// `fixed_divisor(g) / d` for a member `f`; `f` is image primitive iff this is 1.
pub fn image_divisor(f: &IvpPoly, s: &SubsetSpec, options: &Options) -> Result<BigInt> {
    let membership = is_member_with(f, s, options)?;
    if let Some(w) = membership.witness {
        return Err(Error::NotAMember(Box::new(w)));
    }
    let fd = fixed_divisor_with(&f.g, s, options.execution)?;
    Ok(fd / &f.d)
}

/// Whether no integer above 1 divides every value of `f` on `S`. Errors with
/// [`Error::NotAMember`] when `f` is not in `Int(S, Z)`.
pub fn is_image_primitive(f: &IvpPoly, s: &SubsetSpec) -> Result<bool> {
    is_image_primitive_with(f, s, &Options::default())
}

pub fn is_image_primitive_with(f: &IvpPoly, s: &SubsetSpec, options: &Options) -> Result<bool> {
    Ok(image_divisor(f, s, options)?.is_one())
}
