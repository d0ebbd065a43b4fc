//! Linear Hensel lifting of a monic modular factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp::{self, Field};

/// Polynomial with coefficients reduced into `[0, m)`.
fn reduce(coeffs: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = coeffs.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect()
}

fn add_scaled(a: &[BigInt], b: &[u64], k: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_default() + k * BigInt::from(b.get(i).copied().unwrap_or(0))
        })
        .collect()
}

/// Lifts `a = u w (mod p)` with `u`, `w` monic and coprime mod `p` to a
/// factorization modulo `p^exponent`. `a` must be monic modulo `p^exponent`.
fn lift_pair(
    field: Field,
    a: &[BigInt],
    u: &modp::Poly,
    w: &modp::Poly,
    exponent: u32,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let p = BigInt::from(field.p);
    let (g, s, t) = field.ext_gcd(u, w);
    debug_assert_eq!(g, vec![1]);
    let mut uu = modp::to_bigint(u);
    let mut ww = modp::to_bigint(w);
    let mut pk = p.clone();
    for _ in 1..exponent {
        let next = &pk * &p;
        let err = sub(a, &mul(&uu, &ww));
        let e: Vec<BigInt> = err.iter().map(|c| c / &pk).collect();
        let e = field.reduce(&e);
        if !e.is_empty() {
            // du * w + dw * u = e (mod p)
            let (q, dw) = field.divrem(&field.mul_poly(&s, &e), w);
            let du = field.add(&field.mul_poly(&t, &e), &field.mul_poly(&q, u));
            uu = reduce(&add_scaled(&uu, &du, &pk), &next);
            ww = reduce(&add_scaled(&ww, &dw, &pk), &next);
        }
        pk = next;
    }
    (uu, ww)
}

/// Lifts monic pairwise-coprime factors of `a mod p` to factors modulo
/// `p^exponent`. `a` is reduced and made monic modulo `p^exponent` first, so
/// its leading coefficient must be a unit mod `p`.
pub(crate) fn lift(
    field: Field,
    a: &[BigInt],
    factors: &[modp::Poly],
    exponent: u32,
) -> Vec<Vec<BigInt>> {
    let m = num_traits::pow(BigInt::from(field.p), exponent as usize);
    let lc = a.last().expect("nonzero polynomial").clone();
    let inv = lc.extended_gcd(&m).x.mod_floor(&m);
    debug_assert!((&lc * &inv).mod_floor(&m).is_one());
    let mut current = reduce(&a.iter().map(|c| c * &inv).collect::<Vec<_>>(), &m);
    let mut out = Vec::with_capacity(factors.len());
    for (i, u) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            out.push(current.clone());
            break;
        }
        let w = factors[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, f| field.mul_poly(&acc, f));
        let (lu, lw) = lift_pair(field, &current, u, &w, exponent);
        out.push(lu);
        current = lw;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifted_factors_multiply_to_input() {
        // (x^2 + 5)(x - 7)(x + 11) over Z, lifted from mod 13 to mod 13^6
        let a: Vec<BigInt> = [-385, 20, -72, 4, 1]
            .iter()
            .map(|&c| BigInt::from(c))
            .collect();
        let field = Field::new(13);
        let factors: Vec<modp::Poly> = vec![vec![6, 1], vec![11, 1], vec![5, 0, 1]];
        let product = factors
            .iter()
            .fold(vec![1u64], |acc, f| field.mul_poly(&acc, f));
        assert_eq!(product, field.reduce(&a));
        let lifted = lift(field, &a, &factors, 6);
        let m = num_traits::pow(BigInt::from(13), 6);
        let back = lifted
            .iter()
            .fold(vec![BigInt::one()], |acc, f| mul(&acc, f));
        assert_eq!(reduce(&back, &m), reduce(&a, &m));
        assert_eq!(lifted[0], vec![&m - 7, BigInt::one()]);
    }
}
