use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use crate::error::{Error, Result};

/// Exponent of the largest prime power dividing an integer.
///
/// `Infinite` is reserved for the valuation of zero and compares above every
/// finite exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub const ZERO: Valuation = Valuation::Finite(0);

    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(e) => Some(e),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// `p^self` for finite valuations.
    pub fn power_of(self, p: u64) -> Option<BigInt> {
        self.finite().map(|e| BigInt::from(p).pow(e))
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl From<u32> for Valuation {
    fn from(e: u32) -> Self {
        Valuation::Finite(e)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(e) => write!(f, "{e}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Largest `e` with `p^e | n`; `Infinite` iff `n == 0`.
///
/// Primality of `p` is trusted; only `p < 2` is rejected.
pub fn valuation(n: &BigInt, p: u64) -> Result<Valuation> {
    if p < 2 {
        return Err(Error::InvalidPrime(p));
    }
    Ok(valuation_unchecked(n, p))
}

pub(crate) fn valuation_unchecked(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    if p == 2 {
        return Valuation::Finite(n.trailing_zeros().unwrap_or(0) as u32);
    }
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut e = 0u32;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(e);
        }
        m = q;
        e += 1;
    }
}

/// Exponent of `p` in `n`, `u64` version.
pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}
