//! Factorization in `Z[x]`: square-free decomposition, rational-root
//! stripping, then factoring modulo a small prime, Hensel lifting and
//! exhaustive recombination.

mod hensel;
mod modp;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::poly::IntPoly;
use crate::arith::primes::{factor_u64, next_prime};
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: usize = 24;

/// `unit * content * prod factor^multiplicity`, factors primitive and
/// irreducible with positive leading coefficient, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: i8,
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        let product: IntPoly = self.factors.iter().map(|(f, m)| f.pow(*m)).product();
        product.scale(&(&self.content * BigInt::from(self.unit)))
    }

    /// Total number of irreducible factors counted with multiplicity.
    pub fn factor_count(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    /// Whether the primitive part has exactly one irreducible factor.
    pub fn is_irreducible_primitive_part(&self) -> bool {
        self.factor_count() == 1
    }
}

pub fn factor(g: &IntPoly) -> Result<Factorization> {
    factor_with_cap(g, DEFAULT_DEGREE_CAP)
}

pub fn factor_with_cap(g: &IntPoly, degree_cap: usize) -> Result<Factorization> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.degree() > degree_cap {
        return Err(Error::DegreeCapExceeded {
            degree: g.degree(),
            cap: degree_cap,
        });
    }
    let unit = if g.leading_coeff().is_negative() {
        -1
    } else {
        1
    };
    let content = g.content()?;
    let primitive = g.primitive_part()?;
    let mut factors = Vec::new();
    for (part, multiplicity) in square_free_decomposition(&primitive) {
        for f in factor_square_free(&part) {
            factors.push((f, multiplicity));
        }
    }
    factors.sort();
    Ok(Factorization {
        unit,
        content,
        factors,
    })
}

/// Pairs `(s_i, i)` with `p = prod s_i^i`, each `s_i` square-free, primitive
/// and non-constant, for primitive `p` with positive leading coefficient.
pub fn square_free_decomposition(p: &IntPoly) -> Vec<(IntPoly, u32)> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    let mut c = p.gcd(&p.derivative());
    let mut w = p.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        if z.degree() > 0 {
            out.push((z, i));
        }
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    out
}

/// Positive divisors of `n`, or `None` if `n` is too large to bother.
fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&n| n > 0 && n <= 1_000_000_000_000)?;
    let mut divs = vec![1u64];
    for (p, e) in factor_u64(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Some(divs)
}

/// Linear factors `b x - a` of square-free primitive `h`.
fn rational_roots(h: &IntPoly) -> Vec<IntPoly> {
    const MAX_CANDIDATES: usize = 20_000;
    let (Some(nums), Some(dens)) = (
        small_divisors(&h.coeff(0)),
        small_divisors(&h.leading_coeff()),
    ) else {
        return Vec::new();
    };
    if nums.len() * dens.len() > MAX_CANDIDATES {
        return Vec::new();
    }
    let n = h.degree();
    let mut out = Vec::new();
    for &b in &dens {
        for &a in &nums {
            if a.gcd(&b) != 1 {
                continue;
            }
            for a in [BigInt::from(a), -BigInt::from(a)] {
                let b = BigInt::from(b);
                // sum c_i a^i b^(n-i)
                let value = h
                    .coeffs()
                    .iter()
                    .enumerate()
                    .fold(BigInt::zero(), |acc, (i, c)| {
                        acc + c * num_traits::pow(a.clone(), i) * num_traits::pow(b.clone(), n - i)
                    });
                if value.is_zero() {
                    out.push(IntPoly::from_coeffs(vec![-a, b]));
                }
            }
        }
    }
    out
}

/// Irreducible factors of a square-free primitive `h` of positive degree.
fn factor_square_free(h: &IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut h = h.clone();
    if h.coeff(0).is_zero() {
        out.push(IntPoly::x());
        h = h.div_exact(&IntPoly::x()).unwrap();
    }
    if h.degree() >= 2 {
        for linear in rational_roots(&h) {
            h = h.div_exact(&linear).expect("root factor divides");
            out.push(linear);
        }
    }
    match h.degree() {
        0 => {}
        1 => out.push(h),
        _ => out.extend(zassenhaus(&h)),
    }
    out.sort();
    out
}

/// Number of suitable primes whose factor counts are compared.
const PRIME_TRIALS: usize = 5;

fn zassenhaus(h: &IntPoly) -> Vec<IntPoly> {
    let n = h.degree();
    let lc = h.leading_coeff();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(modp::Field, Vec<modp::Poly>)> = None;
    let mut trials = 0;
    let mut p = 3u64;
    while trials < PRIME_TRIALS {
        let field = modp::Field::new(p);
        p = next_prime(p + 1);
        if (&lc % field.p).is_zero() {
            continue;
        }
        let hp = field.reduce(h.coeffs());
        if !field.is_square_free(&hp) {
            continue;
        }
        trials += 1;
        let factors = field.factor_square_free(&field.monic(&hp), &mut rng);
        if factors.len() == 1 {
            return vec![h.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((field, factors));
        }
    }
    let (field, factors) = best.unwrap();

    // coefficients of lc(h) * g / lc(g) for any factor g stay below this
    let norm = h.coeffs().iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let prime = BigInt::from(field.p);
    let mut exponent = 1u32;
    let mut modulus = prime.clone();
    while modulus <= bound {
        modulus *= &prime;
        exponent += 1;
    }
    let lifted = hensel::lift(field, h.coeffs(), &factors, exponent);
    recombine(h, &lifted, &modulus)
}

fn symmetric(c: BigInt, m: &BigInt) -> BigInt {
    let c = c.mod_floor(m);
    if &c * 2 > *m {
        c - m
    } else {
        c
    }
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exhaustive search over subsets of the lifted factors for true factors.
fn recombine(h: &IntPoly, lifted: &[Vec<BigInt>], modulus: &BigInt) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut h = h.clone();
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut size = 1;
    'sizes: while 2 * size <= remaining.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let lc = h.leading_coeff();
            let mut product = vec![lc.clone()];
            for &i in &idx {
                let f = &lifted[remaining[i]];
                let mut next = vec![BigInt::zero(); product.len() + f.len() - 1];
                for (a, x) in product.iter().enumerate() {
                    for (b, y) in f.iter().enumerate() {
                        next[a + b] += x * y;
                    }
                }
                product = next.into_iter().map(|c| c.mod_floor(modulus)).collect();
            }
            let candidate =
                IntPoly::from_coeffs(product.into_iter().map(|c| symmetric(c, modulus)).collect());
            let candidate = candidate.primitive_part().expect("nonzero");
            let divides_constant =
                candidate.coeff(0).is_zero() || (h.coeff(0) % candidate.coeff(0)).is_zero();
            if divides_constant {
                if let Some(q) = h.div_exact(&candidate) {
                    out.push(candidate);
                    h = q;
                    for &i in idx.iter().rev() {
                        remaining.remove(i);
                    }
                    continue 'sizes;
                }
            }
            if !next_combination(&mut idx, remaining.len()) {
                break;
            }
        }
        size += 1;
    }
    if h.degree() > 0 {
        let h = if h.leading_coeff().is_negative() {
            -h
        } else {
            h
        };
        out.push(h);
    }
    out
}

/// Every unordered split of the factor multiset into two nonempty parts,
/// each as `(g1, g2)` with `g1 <= g2`. Content and unit are ignored.
pub fn splittings(f: &Factorization) -> Vec<(IntPoly, IntPoly)> {
    let radices: Vec<u64> = f.factors.iter().map(|(_, m)| u64::from(*m) + 1).collect();
    let total: u64 = radices.iter().product();
    let mut out = Vec::new();
    for idx in 1..total - 1 {
        if idx > total - 1 - idx {
            break;
        }
        let mut rest = idx;
        let mut g1 = IntPoly::one();
        let mut g2 = IntPoly::one();
        for ((poly, m), radix) in f.factors.iter().zip(&radices) {
            let c = (rest % radix) as u32;
            rest /= radix;
            g1 = &g1 * &poly.pow(c);
            g2 = &g2 * &poly.pow(m - c);
        }
        if g2 < g1 {
            std::mem::swap(&mut g1, &mut g2);
        }
        out.push((g1, g2));
    }
    out
}
