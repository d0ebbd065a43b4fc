//! Irreducibility of image-primitive `f = g/d` in `Int(S, Z)`.
//!
//! Every splitting `g = g1 g2` over `Z` is tested against each prime `p | d`:
//! with split exponents `e1`, `e2` (least `p`-valuation of `g_i` on its first
//! `deg g_i + 1` d-sequence points) the splitting is blocked at `p` when
//! `e1 + e2 < v_p(d)`. `f` is irreducible iff every splitting is blocked at
//! some prime; an unblocked splitting yields explicit factors `g1/d1 * g2/d2`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::poly::IntPoly;
use crate::arith::primes::{factor_integer, is_prime, is_square_free};
use crate::arith::valuation::{valuation_unchecked, Valuation};
use crate::error::{Error, Result};
use crate::factor::{factor_with_cap, splittings, Factorization};
use crate::ivp::{fixed_divisor_with, is_member_with, IvpPoly};
use crate::options::{Execution, Options};
use crate::par;
use crate::sequences::DSequence;
use crate::subset::SubsetSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Irreducible,
    Reducible,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Irreducible => "IRREDUCIBLE",
            Verdict::Reducible => "REDUCIBLE",
        })
    }
}

/// Why one splitting fails to give a factorization in `Int(S, Z)`.
///
/// Oriented so that `g1` carries the larger split exponent `e`; `j` is the
/// least index with `v_p(g2(a_j)) < v_p(d) - e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRecord {
    pub g1: IntPoly,
    pub g2: IntPoly,
    pub prime: u64,
    pub e: Valuation,
    pub j: usize,
    pub point: BigInt,
    pub value: BigInt,
    pub valuation: Valuation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    /// One per splitting when irreducible.
    pub witnesses: Vec<WitnessRecord>,
    /// `(h1/d1, h2/d2)` with product `f` when reducible.
    pub parts: Option<(IvpPoly, IvpPoly)>,
    pub factorization: Factorization,
    /// Absent for `d = 1`.
    pub dsequence: Option<DSequence>,
}

/// `min_{l <= deg g} v_p(g(a_l))` over the leading points.
pub fn split_exponent_at(g: &IntPoly, p: u64, points: &[BigInt]) -> Result<Valuation> {
    if points.len() <= g.degree() {
        return Err(Error::SequenceTooShort {
            degree: g.degree(),
            length: points.len().saturating_sub(1),
        });
    }
    Ok(points[..=g.degree()]
        .iter()
        .map(|a| valuation_unchecked(&g.eval(a), p))
        .min()
        .unwrap())
}

pub fn split_exponent(g: &IntPoly, p: u64, dseq: &DSequence) -> Result<Valuation> {
    split_exponent_at(g, p, dseq.elements())
}

/// The sum form of the blocking condition.
pub fn blocked_by_sum(e1: Valuation, e2: Valuation, v: u32) -> bool {
    e1 + e2 < Valuation::Finite(v)
}

/// The existential form: some `j <= deg g2` has `v_p(g2(a_j)) < v - e1`.
pub fn blocked_by_witness(g2: &IntPoly, p: u64, e1: Valuation, v: u32, points: &[BigInt]) -> bool {
    let Valuation::Finite(e1) = e1 else {
        return false;
    };
    if e1 >= v {
        return false;
    }
    let target = Valuation::Finite(v - e1);
    points[..=g2.degree()]
        .iter()
        .any(|a| valuation_unchecked(&g2.eval(a), p) < target)
}

enum Outcome {
    Blocked(WitnessRecord),
    Unblocked {
        g1: IntPoly,
        g2: IntPoly,
        exponents: Vec<Valuation>,
    },
}

#[derive(Clone, Copy)]
enum Path {
    General,
    PrimeDenominator,
}

struct Context<'a> {
    f: &'a IvpPoly,
    s: &'a SubsetSpec,
    options: &'a Options,
    dseq: &'a DSequence,
    primes: Vec<(u64, u32)>,
    square_free: bool,
}

impl Context<'_> {
    fn first_witness_index(&self, g2: &IntPoly, p: u64, target: Valuation) -> usize {
        let points = self.dseq.elements();
        let deg = g2.degree();
        let bound = if self.square_free && self.options.square_free_shortcut {
            (self.s.s_pi(p).min(deg as u64)) as usize
        } else {
            deg
        };
        let below = |j: &usize| valuation_unchecked(&g2.eval(&points[*j]), p) < target;
        (0..=bound)
            .find(below)
            .or_else(|| (0..=deg).find(below))
            .expect("a blocked splitting has a witness index")
    }

    /// Some checkpoint value of `g` is not divisible by `d`.
    fn has_unit_value(&self, g: &IntPoly) -> bool {
        let d = self.f.d();
        self.dseq.elements()[..=g.degree()]
            .iter()
            .any(|a| !(g.eval(a) % d).is_zero())
    }

    fn record(&self, g1: &IntPoly, g2: &IntPoly, p: u64, e: Valuation, j: usize) -> WitnessRecord {
        let point = self.dseq.elements()[j].clone();
        let value = g2.eval(&point);
        let valuation = valuation_unchecked(&value, p);
        WitnessRecord {
            g1: g1.clone(),
            g2: g2.clone(),
            prime: p,
            e,
            j,
            point,
            value,
            valuation,
        }
    }

    fn examine(&self, g1: &IntPoly, g2: &IntPoly, path: Path) -> Result<Outcome> {
        let mut exponents = Vec::with_capacity(self.primes.len());
        for &(p, v) in &self.primes {
            let e1 = split_exponent(g1, p, self.dseq)?;
            let e2 = split_exponent(g2, p, self.dseq)?;
            let blocked = match path {
                Path::General => blocked_by_sum(e1, e2, v),
                Path::PrimeDenominator => self.has_unit_value(g1) && self.has_unit_value(g2),
            };
            if blocked {
                let (a, b, e) = if e2 > e1 { (g2, g1, e2) } else { (g1, g2, e1) };
                let target = Valuation::Finite(v - e.finite().unwrap());
                let j = self.first_witness_index(b, p, target);
                return Ok(Outcome::Blocked(self.record(a, b, p, e, j)));
            }
            exponents.push(e1);
        }
        Ok(Outcome::Unblocked {
            g1: g1.clone(),
            g2: g2.clone(),
            exponents,
        })
    }

    fn certify_parts(
        &self,
        g1: &IntPoly,
        g2: &IntPoly,
        d1: &BigInt,
    ) -> Result<Option<(IvpPoly, IvpPoly)>> {
        let d = self.f.d();
        let h1 = if self.f.unit() < 0 { -g1 } else { g1.clone() };
        let p1 = IvpPoly::new(h1, d1.clone())?;
        let p2 = IvpPoly::new(g2.clone(), d / d1)?;
        let ok = is_member_with(&p1, self.s, self.options)?.is_member()
            && is_member_with(&p2, self.s, self.options)?.is_member();
        Ok(ok.then_some((p1, p2)))
    }

    fn factor_unblocked(
        &self,
        g1: &IntPoly,
        g2: &IntPoly,
        exponents: &[Valuation],
    ) -> Result<Option<(IvpPoly, IvpPoly)>> {
        let greedy = self
            .primes
            .iter()
            .zip(exponents)
            .fold(BigInt::one(), |acc, (&(p, v), e)| {
                let k = e.finite().map_or(v, |e| e.min(v));
                acc * num_traits::pow(BigInt::from(p), k as usize)
            });
        if let Some(parts) = self.certify_parts(g1, g2, &greedy)? {
            return Ok(Some(parts));
        }
        for d1 in divisors(&self.primes) {
            if let Some(parts) = self.certify_parts(g1, g2, &d1)? {
                return Ok(Some(parts));
            }
        }
        Ok(None)
    }
}

/// All positive divisors of `prod p^v`, ascending.
fn divisors(primes: &[(u64, u32)]) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for &(p, v) in primes {
        let len = out.len();
        let mut pk = BigInt::one();
        for _ in 0..v {
            pk *= p;
            for i in 0..len {
                let next = &out[i] * &pk;
                out.push(next);
            }
        }
    }
    out.sort();
    out
}

/// Membership, image primitivity and non-unit checks shared by every path.
/// Returns the d-sequence built for membership.
fn preconditions(f: &IvpPoly, s: &SubsetSpec, options: &Options) -> Result<Option<DSequence>> {
    let membership = is_member_with(f, s, options)?;
    if let Some(w) = membership.witness {
        return Err(Error::NotAMember(Box::new(w)));
    }
    let fd = fixed_divisor_with(f.g(), s, options.execution)?;
    if fd != *f.d() {
        let divisor = if fd.is_zero() { fd } else { fd / f.d() };
        return Err(Error::NotImagePrimitive { divisor });
    }
    if f.degree() == 0 {
        return Err(Error::UnitPolynomial);
    }
    Ok(membership.dsequence)
}

fn unit_denominator(f: &IvpPoly, factorization: Factorization) -> Result<Certificate> {
    let split = splittings(&factorization).into_iter().next();
    let parts = match split {
        None => None,
        Some((g1, g2)) => {
            let h1 = if f.unit() < 0 { -&g1 } else { g1 };
            Some((IvpPoly::new(h1, 1)?, IvpPoly::new(g2, 1)?))
        }
    };
    Ok(Certificate {
        verdict: if parts.is_some() {
            Verdict::Reducible
        } else {
            Verdict::Irreducible
        },
        witnesses: Vec::new(),
        parts,
        factorization,
        dsequence: None,
    })
}

fn decide(f: &IvpPoly, s: &SubsetSpec, options: &Options, path: Path) -> Result<Certificate> {
    let dseq = preconditions(f, s, options)?;
    let factorization = factor_with_cap(f.g(), options.degree_cap)?;
    let Some(dseq) = dseq else {
        return unit_denominator(f, factorization);
    };
    let primes = factor_integer(f.d())?;
    let ctx = Context {
        f,
        s,
        options,
        dseq: &dseq,
        square_free: is_square_free(&primes),
        primes,
    };
    let splits = splittings(&factorization);
    let outcomes = par::try_map(&splits, options.execution, |(g1, g2)| {
        ctx.examine(g1, g2, path)
    })?;
    let mut witnesses = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        match outcome {
            Outcome::Blocked(w) => witnesses.push(w),
            Outcome::Unblocked { g1, g2, exponents } => {
                let parts = ctx.factor_unblocked(&g1, &g2, &exponents)?.ok_or_else(|| {
                    Error::UncertifiedSplitting {
                        g1: g1.to_string(),
                        g2: g2.to_string(),
                    }
                })?;
                return Ok(Certificate {
                    verdict: Verdict::Reducible,
                    witnesses: Vec::new(),
                    parts: Some(parts),
                    factorization,
                    dsequence: Some(dseq),
                });
            }
        }
    }
    Ok(Certificate {
        verdict: Verdict::Irreducible,
        witnesses,
        parts: None,
        factorization,
        dsequence: Some(dseq),
    })
}

pub fn is_irreducible(f: &IvpPoly, s: &SubsetSpec) -> Result<Certificate> {
    is_irreducible_with(f, s, &Options::default())
}

pub fn is_irreducible_with(f: &IvpPoly, s: &SubsetSpec, options: &Options) -> Result<Certificate> {
    decide(f, s, options, Path::General)
}

/// Prime `d`: a splitting is blocked iff each factor has a value on its
/// checkpoints not divisible by `d`.
pub fn is_irreducible_prime_d(f: &IvpPoly, s: &SubsetSpec) -> Result<Certificate> {
    is_irreducible_prime_d_with(f, s, &Options::default())
}

pub fn is_irreducible_prime_d_with(
    f: &IvpPoly,
    s: &SubsetSpec,
    options: &Options,
) -> Result<Certificate> {
    if !is_prime(f.d()) {
        return Err(Error::WrongPath(f.d().clone()));
    }
    decide(f, s, options, Path::PrimeDenominator)
}

/// Exhaustive search over splittings `g1 g2` and divisor pairs `d1 d2 = d`
/// for two members `g1/d1`, `g2/d2`.
pub fn oracle_is_irreducible(f: &IvpPoly, s: &SubsetSpec) -> Result<Verdict> {
    oracle_is_irreducible_with(f, s, &Options::default())
}

pub fn oracle_is_irreducible_with(
    f: &IvpPoly,
    s: &SubsetSpec,
    options: &Options,
) -> Result<Verdict> {
    preconditions(f, s, options)?;
    let factorization = factor_with_cap(f.g(), options.degree_cap)?;
    let primes = factor_integer(f.d())?;
    let divs = divisors(&primes);
    for (g1, g2) in splittings(&factorization) {
        for d1 in &divs {
            let a = IvpPoly::new(g1.clone(), d1.clone())?;
            let b = IvpPoly::new(g2.clone(), f.d() / d1)?;
            if is_member_with(&a, s, options)?.is_member()
                && is_member_with(&b, s, options)?.is_member()
            {
                return Ok(Verdict::Reducible);
            }
        }
    }
    Ok(Verdict::Irreducible)
}

/// Independently rechecks a certificate against `f` and `S`.
///
/// Witness exponents and values are recomputed on a freshly built
/// d-sequence; reducible parts must multiply back to `f` and pass membership.
pub fn verify_certificate(f: &IvpPoly, s: &SubsetSpec, cert: &Certificate) -> Result<bool> {
    let options = Options::default();
    match cert.verdict {
        Verdict::Reducible => {
            let Some((a, b)) = &cert.parts else {
                return Ok(false);
            };
            let product_ok = a.signed_numerator() * b.signed_numerator() == f.signed_numerator()
                && a.d() * b.d() == *f.d()
                && a.degree() > 0
                && b.degree() > 0;
            Ok(product_ok
                && is_member_with(a, s, &options)?.is_member()
                && is_member_with(b, s, &options)?.is_member())
        }
        Verdict::Irreducible => {
            let factorization = factor_with_cap(f.g(), f.degree())?;
            let splits = splittings(&factorization);
            if splits.len() != cert.witnesses.len() {
                return Ok(false);
            }
            if f.d().is_one() {
                return Ok(splits.is_empty());
            }
            let dseq = crate::sequences::build_d_sequence(s, f.d(), f.degree())?;
            for (w, (g1, g2)) in cert.witnesses.iter().zip(&splits) {
                if !verify_witness(f, &dseq, w, g1, g2)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn verify_witness(
    f: &IvpPoly,
    dseq: &DSequence,
    w: &WitnessRecord,
    g1: &IntPoly,
    g2: &IntPoly,
) -> Result<bool> {
    let same_split = (&w.g1 == g1 && &w.g2 == g2) || (&w.g1 == g2 && &w.g2 == g1);
    if !same_split || !(f.d() % w.prime).is_zero() {
        return Ok(false);
    }
    let v = valuation_unchecked(f.d(), w.prime).finite().unwrap();
    let e = split_exponent(&w.g1, w.prime, dseq)?;
    let Valuation::Finite(e_fin) = e else {
        return Ok(false);
    };
    if e != w.e || e_fin >= v || w.j > w.g2.degree() {
        return Ok(false);
    }
    let point = &dseq.elements()[w.j];
    let value = w.g2.eval(point);
    Ok(point == &w.point
        && value == w.value
        && valuation_unchecked(&value, w.prime) < Valuation::Finite(v - e_fin))
}

/// Runs [`is_irreducible_with`] over many inputs, in parallel across inputs
/// when `options.execution` allows.
pub fn is_irreducible_batch(
    inputs: &[(IvpPoly, SubsetSpec)],
    options: &Options,
) -> Vec<Result<Certificate>> {
    let inner = Options {
        execution: Execution::Sequential,
        ..options.clone()
    };
    par::map(inputs, options.execution, |(f, s)| {
        is_irreducible_with(f, s, &inner)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn pts(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn split_exponent_examples() {
        let points = pts(&[0, 1, 2, 3]);
        assert_eq!(
            split_exponent_at(&p(&[9, 2, 6, 1]), 3, &points).unwrap(),
            Valuation::Finite(1)
        );
        assert_eq!(
            split_exponent_at(&p(&[3, 2, -2, 1]), 3, &points).unwrap(),
            Valuation::Finite(0)
        );
        assert_eq!(
            split_exponent_at(&p(&[0, 1]), 2, &pts(&[0, 1])).unwrap(),
            Valuation::Finite(0)
        );
        assert_eq!(
            split_exponent_at(&p(&[0, 1]), 2, &pts(&[0, 4])).unwrap(),
            Valuation::Finite(2)
        );
        assert!(matches!(
            split_exponent_at(&p(&[9, 2, 6, 1]), 3, &pts(&[0, 1])),
            Err(Error::SequenceTooShort { .. })
        ));
    }

    #[test]
    fn binomial_two_is_irreducible() {
        let f = IvpPoly::new(p(&[0, 1, 1]), 2).unwrap();
        let s = SubsetSpec::all();
        let cert = is_irreducible(&f, &s).unwrap();
        assert_eq!(cert.verdict, Verdict::Irreducible);
        assert_eq!(cert.witnesses.len(), 1);
        assert!(verify_certificate(&f, &s, &cert).unwrap());
        assert_eq!(
            is_irreducible_prime_d(&f, &s).unwrap().verdict,
            Verdict::Irreducible
        );
        assert_eq!(oracle_is_irreducible(&f, &s).unwrap(), Verdict::Irreducible);
    }

    #[test]
    fn reducible_with_certified_parts() {
        // x * (x^2 + x)/2
        let f = IvpPoly::new(p(&[0, 0, 1, 1]), 2).unwrap();
        let s = SubsetSpec::all();
        let cert = is_irreducible(&f, &s).unwrap();
        assert_eq!(cert.verdict, Verdict::Reducible);
        let (a, b) = cert.parts.clone().unwrap();
        assert_eq!(
            a.signed_numerator() * b.signed_numerator(),
            f.signed_numerator()
        );
        assert_eq!(a.d() * b.d(), BigInt::from(2));
        assert!(verify_certificate(&f, &s, &cert).unwrap());
        assert_eq!(oracle_is_irreducible(&f, &s).unwrap(), Verdict::Reducible);
        assert_eq!(
            is_irreducible_prime_d(&f, &s).unwrap().verdict,
            Verdict::Reducible
        );
    }

    #[test]
    fn cubic_over_two_is_not_image_primitive() {
        // x^3 - x is always divisible by 6
        let f = IvpPoly::new(p(&[0, -1, 0, 1]), 2).unwrap();
        assert_eq!(
            is_irreducible(&f, &SubsetSpec::all()).unwrap_err(),
            Error::NotImagePrimitive { divisor: 3.into() }
        );
    }

    #[test]
    fn preconditions_are_enforced() {
        let s = SubsetSpec::all();
        let not_member = IvpPoly::new(p(&[1, 0, 1]), 2).unwrap();
        assert!(matches!(
            is_irreducible(&not_member, &s),
            Err(Error::NotAMember(_))
        ));
        let not_primitive = IvpPoly::from_int_poly(p(&[0, 1, 1])).unwrap();
        assert_eq!(
            is_irreducible(&not_primitive, &s).unwrap_err(),
            Error::NotImagePrimitive { divisor: 2.into() }
        );
        let unit = IvpPoly::from_int_poly(p(&[-1])).unwrap();
        assert_eq!(
            is_irreducible(&unit, &s).unwrap_err(),
            Error::UnitPolynomial
        );
        let two = IvpPoly::new(p(&[0, 1, 1]), 2).unwrap();
        let six = IvpPoly::new(p(&[0, -1, 0, 1]), 6).unwrap();
        assert!(is_irreducible_prime_d(&two, &s).is_ok());
        assert_eq!(
            is_irreducible_prime_d(&six, &s).unwrap_err(),
            Error::WrongPath(6.into())
        );
    }

    #[test]
    fn unit_denominator_follows_integer_factorization() {
        let s = SubsetSpec::all();
        let irreducible = IvpPoly::from_int_poly(p(&[1, 0, 1])).unwrap();
        assert_eq!(
            is_irreducible(&irreducible, &s).unwrap().verdict,
            Verdict::Irreducible
        );
        let reducible = IvpPoly::from_int_poly(p(&[-1, 0, 1])).unwrap();
        let cert = is_irreducible(&reducible, &s).unwrap();
        assert_eq!(cert.verdict, Verdict::Reducible);
        assert!(verify_certificate(&reducible, &s, &cert).unwrap());
    }

    #[test]
    fn forms_agree_on_small_cases() {
        let points = pts(&[0, 1, 2, 3, 4, 5, 6]);
        let polys = [
            p(&[0, 1]),
            p(&[1, 1]),
            p(&[0, 1, 1]),
            p(&[2, 0, 1]),
            p(&[6, 11, 6, 1]),
            p(&[4]),
        ];
        for g1 in &polys {
            for g2 in &polys {
                for (pr, v) in [(2u64, 1u32), (2, 3), (3, 1), (3, 2)] {
                    let e1 = split_exponent_at(g1, pr, &points).unwrap();
                    let e2 = split_exponent_at(g2, pr, &points).unwrap();
                    assert_eq!(
                        blocked_by_witness(g2, pr, e1, v, &points),
                        blocked_by_sum(e1, e2, v),
                        "{g1} {g2} {pr} {v}"
                    );
                }
            }
        }
    }

    #[test]
    fn divisor_listing() {
        assert_eq!(divisors(&[(2, 2), (3, 1)]), pts(&[1, 2, 3, 4, 6, 12]));
    }
}
