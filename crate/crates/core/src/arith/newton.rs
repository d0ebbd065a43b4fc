//! Newton (divided-difference) expansion over exact rationals.
//!
//! `f = c_0 + c_1 (x - a_0) + c_2 (x - a_0)(x - a_1) + ...`

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

fn eval_rational(coeffs: &[BigRational], a: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * a + c)
}

/// Newton coefficients `c_0..c_m` of the rational polynomial with the given
/// coefficients (low degree first) on the points `a_0..a_m`.
///
/// Requires `m >= deg f`; extra points produce trailing zero coefficients.
pub fn newton_form(coeffs: &[BigRational], points: &[BigInt]) -> Result<Vec<BigRational>> {
    let degree = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    if points.len() < degree + 1 {
        return Err(Error::TooFewPoints {
            needed: degree + 1,
            got: points.len(),
        });
    }
    let mut seen = HashSet::new();
    for a in points {
        if !seen.insert(a) {
            return Err(Error::DuplicatePoint(a.clone()));
        }
    }
    let xs: Vec<BigRational> = points
        .iter()
        .cloned()
        .map(BigRational::from_integer)
        .collect();
    let mut table: Vec<BigRational> = xs.iter().map(|x| eval_rational(coeffs, x)).collect();
    // in-place divided differences: after pass k, table[i] = f[x_{i-k}..x_i]
    for k in 1..table.len() {
        for i in (k..table.len()).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &xs[i] - &xs[i - k];
            table[i] = num / den;
        }
    }
    Ok(table)
}

/// Re-expands Newton coefficients into monomial coefficients (low degree
/// first, trailing zeros trimmed).
pub fn from_newton_form(newton: &[BigRational], points: &[BigInt]) -> Vec<BigRational> {
    assert!(
        points.len() >= newton.len(),
        "need one point per coefficient"
    );
    let mut out: Vec<BigRational> = Vec::new();
    // Horner in the Newton basis, innermost coefficient first
    for (i, c) in newton.iter().enumerate().rev() {
        let a = BigRational::from_integer(points[i].clone());
        // out = out * (x - a) + c
        let mut next = vec![BigRational::zero(); out.len() + 1];
        for (j, o) in out.iter().enumerate() {
            next[j + 1] += o;
            next[j] -= o * &a;
        }
        next[0] += c;
        out = next;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pts(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&a| BigInt::from(a)).collect()
    }

    /// Independent route: solve the lower-triangular system
    /// `f(a_i) = sum_j c_j prod_{l<j} (a_i - a_l)` by forward substitution.
    fn triangular_oracle(coeffs: &[BigRational], points: &[i64]) -> Vec<BigRational> {
        let mut c: Vec<BigRational> = Vec::new();
        for (i, &ai) in points.iter().enumerate() {
            let ai_q = q(ai, 1);
            let value = eval_rational(coeffs, &ai_q);
            let mut acc = BigRational::zero();
            let mut basis = BigRational::one();
            for (j, cj) in c.iter().enumerate() {
                acc += cj * &basis;
                basis *= q(ai - points[j], 1);
            }
            c.push((value - acc) / basis);
            let _ = i;
        }
        c
    }

    #[test]
    fn square_on_0_1_2() {
        let f = vec![q(0, 1), q(0, 1), q(1, 1)];
        let c = newton_form(&f, &pts(&[0, 1, 2])).unwrap();
        assert_eq!(c, vec![q(0, 1), q(1, 1), q(1, 1)]);
        assert_eq!(c, triangular_oracle(&f, &[0, 1, 2]));
    }

    #[test]
    fn constant() {
        let c = newton_form(&[q(5, 1)], &pts(&[0])).unwrap();
        assert_eq!(c, vec![q(5, 1)]);
    }

    #[test]
    fn binomial_two() {
        // (x^2 + x)/2 = x + x(x-1)/2
        let f = vec![q(0, 1), q(1, 2), q(1, 2)];
        let c = newton_form(&f, &pts(&[0, 1, 2])).unwrap();
        assert_eq!(c, triangular_oracle(&f, &[0, 1, 2]));
        assert_eq!(c, vec![q(0, 1), q(1, 1), q(1, 2)]);
    }

    #[test]
    fn errors() {
        let f = vec![q(0, 1), q(0, 1), q(1, 1)];
        assert_eq!(
            newton_form(&f, &pts(&[0, 1, 1])),
            Err(Error::DuplicatePoint(1.into()))
        );
        assert_eq!(
            newton_form(&f, &pts(&[0, 1])),
            Err(Error::TooFewPoints { needed: 3, got: 2 })
        );
    }

    #[test]
    fn round_trip_with_extra_points() {
        let f = vec![q(3, 7), q(-1, 2), q(0, 1), q(5, 3)];
        let points = pts(&[4, -1, 9, 0, 2]);
        let c = newton_form(&f, &points).unwrap();
        assert!(c[4].is_zero());
        assert_eq!(from_newton_form(&c, &points), f);
    }
}
