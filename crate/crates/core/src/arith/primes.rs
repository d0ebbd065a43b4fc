//! Primality and integer factorization at desk scale.
//!
//! Denominators and subset parameters are factored by trial division followed
//! by Pollard's rho on the 64-bit cofactor. Prime factors wider than 64 bits are
//! reported as unsupported.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary integers; exact for values that fit in `u64`,
/// probabilistic (fixed bases) beyond.
pub fn is_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// Primes `<= bound` in ascending order.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| p.then_some(i as u64))
        .collect()
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization of `n` as ascending `(prime, exponent)` pairs.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut raw = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        while n.is_multiple_of(p) && n > 1 {
            raw.push(p);
            n /= p;
        }
    }
    factor_u64_into(n, &mut raw);
    collect_pairs(raw)
}

fn collect_pairs(mut raw: Vec<u64>) -> Vec<(u64, u32)> {
    raw.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in raw {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Prime factorization of `|n|` (sign discarded). `n == 0` has no
/// factorization and yields an empty list, as do `±1`.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    let mut m = n.abs();
    if m.is_zero() {
        return Ok(Vec::new());
    }
    if let Some(small) = m.to_u64() {
        return Ok(factor_u64(small));
    }
    let mut raw = Vec::new();
    const TRIAL: u64 = 1 << 20;
    let mut p = 2u64;
    while p < TRIAL {
        let bp = BigInt::from(p);
        while (&m % &bp).is_zero() {
            m /= &bp;
            raw.push(p);
        }
        if let Some(small) = m.to_u64() {
            let mut pairs = raw.clone();
            for (q, e) in factor_u64(small) {
                pairs.extend(std::iter::repeat_n(q, e as usize));
            }
            return Ok(collect_pairs(pairs));
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    Err(Error::UnsupportedDenominator(n.clone()))
}

pub fn is_square_free(factors: &[(u64, u32)]) -> bool {
    factors.iter().all(|&(_, e)| e == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_match_sieve() {
        let sieve = primes_up_to(10_000);
        let mr: Vec<u64> = (0..=10_000).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(sieve, mr);
    }

    #[test]
    fn large_primes() {
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(18_446_744_073_709_551_559));
        assert!(is_prime(
            &"170141183460469231731687303715884105727".parse().unwrap()
        ));
        assert!(!is_prime(
            &"170141183460469231731687303715884105729".parse().unwrap()
        ));
    }

    #[test]
    fn factorization() {
        assert_eq!(factor_u64(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factor_u64(1), vec![]);
        assert_eq!(
            factor_u64(600_851_475_143),
            vec![(71, 1), (839, 1), (1471, 1), (6857, 1)]
        );
        assert_eq!(
            factor_integer(&BigInt::from(-40320)).unwrap(),
            vec![(2, 7), (3, 2), (5, 1), (7, 1)]
        );
        let big: BigInt = BigInt::from(u64::MAX) * BigInt::from(1024);
        let f = factor_integer(&big).unwrap();
        assert_eq!(f[0], (2, 10));
    }

    #[test]
    fn oversize_prime_factor_rejected() {
        let p: BigInt = "170141183460469231731687303715884105727".parse().unwrap();
        assert!(matches!(
            factor_integer(&p),
            Err(Error::UnsupportedDenominator(_))
        ));
    }

    #[test]
    fn next_primes() {
        assert_eq!(next_prime(0), 2);
        assert_eq!(next_prime(14), 17);
    }
}
