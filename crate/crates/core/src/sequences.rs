//! π-sequences (greedy minimal-valuation orderings of `S` at a prime) and
//! d-sequences (CRT combinations of π-sequences for every prime dividing `d`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::crt::{crt_solve, Congruence};
use crate::arith::primes::factor_integer;
use crate::arith::valuation::{valuation_unchecked, Valuation};
use crate::error::{Error, Result};
use crate::options::Execution;
use crate::par;
use crate::subset::SubsetSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiSequence {
    prime: u64,
    elements: Vec<BigInt>,
    /// `step_valuations[i - 1]` is the valuation of `prod_{j<i} (u_i - u_j)`.
    step_valuations: Vec<u32>,
}

impl PiSequence {
    /// Wraps explicit elements, computing their step valuations. No
    /// minimality check is made; see [`is_pi_sequence`].
    pub fn from_elements(prime: u64, elements: Vec<BigInt>) -> Result<Self> {
        check_prime(prime)?;
        let mut step_valuations = Vec::with_capacity(elements.len().saturating_sub(1));
        for i in 1..elements.len() {
            match product_valuation(&elements[i], &elements[..i], prime) {
                Valuation::Finite(v) => step_valuations.push(v),
                Valuation::Infinite => return Err(Error::DuplicatePoint(elements[i].clone())),
            }
        }
        Ok(PiSequence {
            prime,
            elements,
            step_valuations,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn elements(&self) -> &[BigInt] {
        &self.elements
    }

    /// Index of the last element (`len - 1`).
    pub fn length(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn step_valuations(&self) -> &[u32] {
        &self.step_valuations
    }

    /// Valuation of `prod_{j<k} (u_k - u_j)`; zero at `k = 0`.
    ///
    /// # Panics
    /// If `k` exceeds [`length`](Self::length).
    pub fn step_exponent(&self, k: usize) -> Valuation {
        assert!(
            k <= self.length(),
            "step {k} beyond sequence length {}",
            self.length()
        );
        if k == 0 {
            Valuation::ZERO
        } else {
            Valuation::Finite(self.step_valuations[k - 1])
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 {
        Err(Error::InvalidPrime(p))
    } else {
        Ok(())
    }
}

fn product_valuation(x: &BigInt, prefix: &[BigInt], p: u64) -> Valuation {
    prefix
        .iter()
        .map(|u| valuation_unchecked(&(x - u), p))
        .fold(Valuation::ZERO, |acc, v| acc + v)
}

/// Residue classes of `S` that realize the minimal product valuation against
/// `prefix`, as `(residue, level)` pairs modulo `p^level`, plus that minimum.
///
/// Classes are refined level by level. A class `r mod p^m` that contains no
/// prefix element gives every member the same valuation `sum v(r - u_j)`; a
/// class that does contain one only bounds it from below by
/// `sum min(v(r - u_j), m)`, and is split further while that bound does not
/// exceed the best value seen.
fn minimal_classes(s: &SubsetSpec, p: u64, prefix: &[BigInt]) -> (u32, Vec<(BigInt, u32)>) {
    let mut best: Option<u32> = None;
    let mut winners: Vec<(BigInt, u32)> = Vec::new();
    let mut frontier = s.residues_mod(p, 1);
    let mut m = 1u32;
    while !frontier.is_empty() {
        let q = num_traits::pow(BigInt::from(p), m as usize);
        let mut next = Vec::new();
        for r in frontier {
            let mut bound = 0u32;
            let mut exact = true;
            for u in prefix {
                let diff = (&r - u).mod_floor(&q);
                if diff.is_zero() {
                    bound += m;
                    exact = false;
                } else {
                    bound += valuation_unchecked(&diff, p).finite().unwrap();
                }
            }
            if best.is_some_and(|b| bound > b) {
                continue;
            }
            if exact {
                if best != Some(bound) {
                    winners.clear();
                }
                best = Some(bound);
                winners.push((r, m));
            } else {
                for t in 0..p {
                    let lift = &r + &q * t;
                    if s.meets_residue(&lift, p, m + 1) {
                        next.push(lift);
                    }
                }
            }
        }
        frontier = next;
        m += 1;
    }
    (
        best.expect("an infinite or unexhausted subset always has a fresh class"),
        winners,
    )
}

fn ensure_available(s: &SubsetSpec, needed: usize) -> Result<()> {
    if let Some(n) = s.cardinality() {
        if needed > n {
            return Err(Error::SequenceTooLong {
                requested: needed - 1,
                needed,
                available: n,
            });
        }
    }
    Ok(())
}

/// Next element of the greedy π-sequence after `prefix`, with its step
/// valuation. Ties go to the smallest element.
fn next_element(s: &SubsetSpec, p: u64, prefix: &[BigInt]) -> Result<(BigInt, u32)> {
    if prefix.is_empty() {
        let first = s.iter().next().expect("subsets are nonempty");
        return Ok((first, 0));
    }
    let (best, winners) = minimal_classes(s, p, prefix);
    let mut chosen: Option<BigInt> = None;
    for (r, m) in winners {
        let rep = s.representative(&r, p, m)?;
        if chosen.as_ref().is_none_or(|c| rep < *c) {
            chosen = Some(rep);
        }
    }
    Ok((chosen.unwrap(), best))
}

/// Greedy π-sequence `u_0..u_k` of `S` at `p`.
pub fn build_pi_sequence(s: &SubsetSpec, p: u64, k: usize) -> Result<PiSequence> {
    check_prime(p)?;
    ensure_available(s, k + 1)?;
    let mut elements: Vec<BigInt> = Vec::with_capacity(k + 1);
    let mut step_valuations = Vec::with_capacity(k);
    for i in 0..=k {
        let (u, v) = next_element(s, p, &elements)?;
        if i > 0 {
            step_valuations.push(v);
        }
        elements.push(u);
    }
    Ok(PiSequence {
        prime: p,
        elements,
        step_valuations,
    })
}

/// Smallest valuation of `prod (x - u)` over `x` in `S`, `x` outside `prefix`.
pub fn minimal_step_valuation(s: &SubsetSpec, p: u64, prefix: &[BigInt]) -> Result<u32> {
    check_prime(p)?;
    ensure_available(s, prefix.len() + 1)?;
    Ok(minimal_classes(s, p, prefix).0)
}

/// Whether every element after the first attains the minimal step valuation
/// for its prefix.
pub fn is_pi_sequence(s: &SubsetSpec, p: u64, candidate: &[BigInt]) -> Result<bool> {
    check_prime(p)?;
    if let Some(x) = candidate.iter().find(|x| !s.contains(x)) {
        return Err(Error::NotInSubset(x.clone()));
    }
    for i in 1..candidate.len() {
        let v = product_valuation(&candidate[i], &candidate[..i], p);
        if v.is_infinite() {
            return Ok(false);
        }
        if v != Valuation::Finite(minimal_step_valuation(s, p, &candidate[..i])?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DComponent {
    pub pi: PiSequence,
    /// Step exponent `e_k` of `pi` at the sequence length.
    pub exponent: u32,
    /// `prime^(exponent + 1)`.
    pub modulus: BigInt,
}

impl DComponent {
    pub fn prime(&self) -> u64 {
        self.pi.prime()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSequence {
    d: BigInt,
    k: usize,
    elements: Vec<BigInt>,
    components: Vec<DComponent>,
}

impl DSequence {
    /// `|d|`.
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn length(&self) -> usize {
        self.k
    }

    pub fn elements(&self) -> &[BigInt] {
        &self.elements
    }

    /// One entry per prime of `d`, ascending.
    pub fn components(&self) -> &[DComponent] {
        &self.components
    }

    pub fn component(&self, p: u64) -> Option<&DComponent> {
        self.components.iter().find(|c| c.prime() == p)
    }

    pub fn primes(&self) -> Vec<u64> {
        self.components.iter().map(DComponent::prime).collect()
    }

    pub fn moduli(&self) -> Vec<BigInt> {
        self.components.iter().map(|c| c.modulus.clone()).collect()
    }
}

fn denominator_primes(d: &BigInt) -> Result<Vec<u64>> {
    if d.is_zero() {
        return Err(Error::InvalidModulus(d.clone()));
    }
    if d.abs() < BigInt::from(2) {
        return Err(Error::UnitDenominator(d.clone()));
    }
    Ok(factor_integer(d)?.into_iter().map(|(p, _)| p).collect())
}

pub fn build_d_sequence(s: &SubsetSpec, d: &BigInt, k: usize) -> Result<DSequence> {
    build_d_sequence_with(s, d, k, Execution::default())
}

/// d-sequence `a_0..a_k`: per prime `p | d`, a π-sequence of length `k` is
/// built, and `a_i` is the least non-negative solution of
/// `a_i = u_i (mod p^(e_k + 1))` across all primes.
pub fn build_d_sequence_with(
    s: &SubsetSpec,
    d: &BigInt,
    k: usize,
    execution: Execution,
) -> Result<DSequence> {
    let primes = denominator_primes(d)?;
    ensure_available(s, k + 1)?;
    let pis = par::try_map(&primes, execution, |&p| build_pi_sequence(s, p, k))?;
    assemble(d, k, pis)
}

/// d-sequence from caller-chosen π-sequences, one per prime of `d`, all of the
/// same length.
pub fn build_d_sequence_from(d: &BigInt, pis: Vec<PiSequence>) -> Result<DSequence> {
    let primes = denominator_primes(d)?;
    let mut pis = pis;
    pis.sort_by_key(PiSequence::prime);
    let given: Vec<u64> = pis.iter().map(PiSequence::prime).collect();
    if let Some(&p) = primes.iter().find(|p| !given.contains(p)) {
        return Err(Error::PrimeNotInDenominator {
            prime: p,
            d: d.clone(),
        });
    }
    if let Some(&p) = given.iter().find(|p| !primes.contains(p)) {
        return Err(Error::PrimeNotInDenominator {
            prime: p,
            d: d.clone(),
        });
    }
    let k = pis.first().map_or(0, PiSequence::length);
    if let Some(pi) = pis.iter().find(|pi| pi.length() != k) {
        return Err(Error::SequenceTooShort {
            degree: k,
            length: pi.length(),
        });
    }
    assemble(d, k, pis)
}

fn assemble(d: &BigInt, k: usize, pis: Vec<PiSequence>) -> Result<DSequence> {
    let components: Vec<DComponent> = pis
        .into_iter()
        .map(|pi| {
            let exponent = pi.step_exponent(k).finite().unwrap();
            let modulus = num_traits::pow(BigInt::from(pi.prime()), exponent as usize + 1);
            DComponent {
                pi,
                exponent,
                modulus,
            }
        })
        .collect();
    let mut elements = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let system = components
            .iter()
            .map(|c| Congruence::new(c.pi.elements()[i].clone(), c.modulus.clone()))
            .collect::<Result<Vec<_>>>()?;
        elements.push(crt_solve(&system)?.0);
    }
    Ok(DSequence {
        d: d.abs(),
        k,
        elements,
        components,
    })
}

/// Whether, at every prime of `d` and every step, the candidate's product
/// valuation equals the minimal step valuation of `S`.
pub fn verify_d_sequence(s: &SubsetSpec, d: &BigInt, candidate: &[BigInt]) -> Result<bool> {
    let primes = denominator_primes(d)?;
    if candidate.is_empty() {
        return Ok(true);
    }
    let k = candidate.len() - 1;
    for p in primes {
        let canonical = build_pi_sequence(s, p, k)?;
        for i in 1..=k {
            if product_valuation(&candidate[i], &candidate[..i], p) != canonical.step_exponent(i) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
