//! Dense polynomials over `F_p` (`p < 2^32`) and their factorization by
//! distinct-degree splitting followed by Cantor-Zassenhaus.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

/// Coefficients low degree first, no trailing zeros; the zero polynomial is
/// empty.
pub(crate) type Poly = Vec<u64>;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Field {
    pub p: u64,
}

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &Poly) -> usize {
    a.len().saturating_sub(1)
}

impl Field {
    pub fn new(p: u64) -> Self {
        assert!((3..(1 << 32)).contains(&p));
        Field { p }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn reduce(&self, coeffs: &[BigInt]) -> Poly {
        let p = BigInt::from(self.p);
        trim(
            coeffs
                .iter()
                .map(|c| c.mod_floor(&p).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0))
                        % self.p
                })
                .collect(),
        )
    }

    pub fn mul_poly(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mul(x, y)) % self.p;
            }
        }
        trim(out)
    }

    pub fn scale(&self, a: &Poly, k: u64) -> Poly {
        trim(a.iter().map(|&x| self.mul(x, k)).collect())
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match a.last() {
            Some(&lc) => self.scale(a, self.inv(lc)),
            None => Vec::new(),
        }
    }

    /// Quotient and remainder; `b` nonzero.
    pub fn divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(*b.last().unwrap());
        let mut r = a.clone();
        let db = b.len() - 1;
        let mut q = vec![0u64; a.len() - b.len() + 1];
        for i in (0..q.len()).rev() {
            let c = self.mul(r[i + db], inv);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + self.p - self.mul(c, bj)) % self.p;
            }
        }
        (trim(q), trim(r))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.divrem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul_poly(&q, &s1));
            let t = self.sub(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("gcd of nonzero inputs"));
        (
            self.scale(&r0, inv),
            self.scale(&s0, inv),
            self.scale(&t0, inv),
        )
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul(c, i as u64 % self.p))
                .collect(),
        )
    }

    fn pow_mod_poly(&self, base: &Poly, exp: &BigUint, modulus: &Poly) -> Poly {
        let mut result: Poly = vec![1];
        let base = self.rem(base, modulus);
        for i in (0..exp.bits()).rev() {
            result = self.rem(&self.mul_poly(&result, &result), modulus);
            if exp.bit(i) {
                result = self.rem(&self.mul_poly(&result, &base), modulus);
            }
        }
        result
    }

    pub fn is_square_free(&self, a: &Poly) -> bool {
        degree(&self.gcd(a, &self.derivative(a))) == 0
    }

    /// `(product of all irreducible factors of degree i, i)` for monic
    /// square-free `f`.
    fn distinct_degree(&self, f: &Poly) -> Vec<(Poly, usize)> {
        let x: Poly = vec![0, 1];
        let p = BigUint::from(self.p);
        let mut out = Vec::new();
        let mut f = f.clone();
        let mut h = x.clone();
        let mut i = 0;
        while degree(&f) >= 2 * (i + 1) {
            i += 1;
            h = self.pow_mod_poly(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if degree(&g) > 0 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, i));
            }
        }
        if degree(&f) > 0 {
            let d = degree(&f);
            out.push((f, d));
        }
        out
    }

    /// Splits monic `f`, all of whose irreducible factors have degree `d`.
    fn equal_degree<R: Rng>(&self, f: &Poly, d: usize, rng: &mut R, out: &mut Vec<Poly>) {
        let n = degree(f);
        if n == d {
            out.push(f.clone());
            return;
        }
        let exp = (num_traits::pow(BigUint::from(self.p), d) - 1u32) / 2u32;
        loop {
            let a: Poly = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if degree(&a) == 0 {
                continue;
            }
            let g = self.gcd(&a, f);
            let split = if degree(&g) > 0 {
                g
            } else {
                let b = self.sub(&self.pow_mod_poly(&a, &exp, f), &vec![1]);
                self.gcd(&b, f)
            };
            if degree(&split) > 0 && degree(&split) < n {
                let rest = self.divrem(f, &split).0;
                self.equal_degree(&split, d, rng, out);
                self.equal_degree(&rest, d, rng, out);
                return;
            }
        }
    }

    /// Monic irreducible factors of monic square-free `f`.
    pub fn factor_square_free<R: Rng>(&self, f: &Poly, rng: &mut R) -> Vec<Poly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            self.equal_degree(&g, d, rng, &mut out);
        }
        out.sort();
        out
    }
}

pub(crate) fn to_bigint(a: &Poly) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}
