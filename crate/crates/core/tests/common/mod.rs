//! Seeded random suite of image-primitive `g/d` shared by integration tests.

#![allow(dead_code)]

use ivpoly::{fixed_divisor, IntPoly, IvpPoly, SubsetSpec};
use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DENOMINATORS: [i64; 5] = [2, 3, 4, 6, 12];

pub fn subsets() -> Vec<SubsetSpec> {
    vec![
        SubsetSpec::all(),
        SubsetSpec::ap(2, 1).unwrap(),
        SubsetSpec::squares(),
        SubsetSpec::primes(),
    ]
}

#[derive(Debug, Clone)]
pub struct Case {
    pub f: IvpPoly,
    pub s: SubsetSpec,
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize, bound: i64) -> IntPoly {
    let mut c: Vec<i64> = (0..=degree)
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    while c[degree] == 0 {
        c[degree] = rng.gen_range(-bound..=bound);
    }
    IntPoly::from_i64s(&c)
}

/// `prod (x - s_i) * h + d * r`: the product over distinct small elements of
/// `S` pushes the fixed divisor up, the `d * r` perturbation pulls it back
/// towards `d`.
fn structured(rng: &mut ChaCha8Rng, s: &SubsetSpec, degree: usize, d: i64) -> IntPoly {
    let pool = s.enumerate(8);
    let roots = rng.gen_range(1..=degree);
    let chosen: Vec<&BigInt> = pool.choose_multiple(rng, roots).collect();
    let base: IntPoly = chosen
        .iter()
        .map(|&a| IntPoly::linear_root(a.clone()))
        .product();
    let h = random_poly(rng, degree - roots, 2);
    let r_degree = rng.gen_range(0..degree);
    let r = random_poly(rng, r_degree, 2);
    &(&base * &h) + &r.scale(&BigInt::from(d))
}

fn divisors(d: i64) -> Vec<i64> {
    (1..=d).filter(|k| d % k == 0).collect()
}

/// Draws image-primitive inputs: degree at most 6, `d` from [`DENOMINATORS`],
/// `S` from [`subsets`], with a mix of single structured numerators and
/// products of two.
pub fn random_suite(seed: u64, count: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subsets = subsets();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 2_000_000, "random suite generation stalled");
        let s = subsets[out.len() % subsets.len()].clone();
        let d = DENOMINATORS[rng.gen_range(0..DENOMINATORS.len())];
        let g = if rng.gen_bool(0.5) {
            let k = rng.gen_range(1..=6);
            structured(&mut rng, &s, k, d)
        } else {
            let d1 = *divisors(d).choose(&mut rng).unwrap();
            let k1 = rng.gen_range(1..=5);
            let k2 = rng.gen_range(1..=6 - k1);
            let a = structured(&mut rng, &s, k1, d1);
            let b = structured(&mut rng, &s, k2, d / d1);
            &a * &b
        };
        if g.degree() == 0 || g.degree() > 6 || g.content().map_or(true, |c| !c.is_one()) {
            continue;
        }
        match fixed_divisor(&g, &s) {
            Ok(fd) if fd == BigInt::from(d) => {}
            _ => continue,
        }
        out.push(Case {
            f: IvpPoly::new(g, d).unwrap(),
            s,
        });
    }
    out
}

/// gcd of `g` over the first `n` enumerated elements.
pub fn sampled_gcd(g: &IntPoly, s: &SubsetSpec, n: usize) -> BigInt {
    use num_integer::Integer;
    s.enumerate(n)
        .iter()
        .fold(BigInt::from(0), |acc, x| acc.gcd(&g.eval(x)))
}
