use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `x = residue (mod modulus)` with `0 <= residue < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    residue: BigInt,
    modulus: BigInt,
}

impl Congruence {
    /// Reduces `residue` into `[0, modulus)`.
    pub fn new(residue: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Result<Self> {
        let modulus = modulus.into();
        if !modulus.is_positive() {
            return Err(Error::InvalidModulus(modulus));
        }
        let residue = residue.into().mod_floor(&modulus);
        Ok(Congruence { residue, modulus })
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn is_satisfied_by(&self, x: &BigInt) -> bool {
        x.mod_floor(&self.modulus) == self.residue
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x = {} mod {}", self.residue, self.modulus)
    }
}

/// Combines congruences into the minimal non-negative solution and the
/// combined modulus (the lcm of the inputs).
///
/// Non-coprime moduli are accepted as long as the residues agree on the
/// common factor.
pub fn crt_solve(congruences: &[Congruence]) -> Result<(BigInt, BigInt)> {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for c in congruences {
        let g = m.extended_gcd(&c.modulus);
        let diff = &c.residue - &x;
        if !(&diff % &g.gcd).is_zero() {
            let seen = Congruence {
                residue: x,
                modulus: m,
            };
            return Err(Error::Inconsistent(Box::new((seen, c.clone()))));
        }
        // x + m * t = residue (mod modulus), with m * g.x = gcd (mod modulus)
        let step = &c.modulus / &g.gcd;
        let t = ((&diff / &g.gcd) * &g.x).mod_floor(&step);
        x += &m * t;
        m *= step;
        x = x.mod_floor(&m);
    }
    Ok((x, m))
}
