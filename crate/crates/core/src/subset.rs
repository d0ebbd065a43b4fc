//! Describable subsets `S` of the integers and the residue-class queries the
//! sequence builders need.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::primes::{is_prime, is_prime_u64};
use crate::arith::valuation::valuation_unchecked;
use crate::error::{Error, Result};

pub const DEFAULT_SEARCH_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SubsetKind {
    /// All of `Z`, enumerated `0, 1, 2, ...`.
    All,
    /// `a Z + b` with `a > 0`, enumerated `b, a + b, 2a + b, ...`.
    Ap { a: BigInt, b: BigInt },
    /// `{n^2 : n >= 0}`.
    Squares,
    /// Positive primes.
    Primes,
    /// Finite set, stored ascending without repeats.
    Finite(Vec<BigInt>),
}

/// A subset `S` of `Z` together with the bound used by witness searches that
/// have no closed form (primes in a residue class).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetSpec {
    kind: SubsetKind,
    search_cap: u64,
}

fn pow_big(p: u64, m: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), m as usize)
}

/// Whether `r` is a square modulo `p^m`.
fn is_square_mod_prime_power(r: &BigInt, p: u64, m: u32) -> bool {
    let q = pow_big(p, m);
    let r = r.mod_floor(&q);
    if r.is_zero() {
        return true;
    }
    let v = valuation_unchecked(&r, p).finite().unwrap();
    if v % 2 == 1 {
        return false;
    }
    let u = &r / pow_big(p, v);
    let k = m - v;
    if p == 2 {
        match k {
            1 => true,
            2 => u.mod_floor(&BigInt::from(4)).is_one(),
            _ => u.mod_floor(&BigInt::from(8)).is_one(),
        }
    } else {
        let bp = BigInt::from(p);
        let e = BigInt::from((p - 1) / 2);
        u.mod_floor(&bp).modpow(&e, &bp).is_one()
    }
}

/// `0, 1, ..., q - 1`.
fn upto(q: &BigInt) -> impl Iterator<Item = BigInt> + '_ {
    std::iter::successors(Some(BigInt::zero()), |x| Some(x + 1)).take_while(move |x| x < q)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

impl SubsetSpec {
    fn with_kind(kind: SubsetKind) -> Self {
        SubsetSpec {
            kind,
            search_cap: DEFAULT_SEARCH_CAP,
        }
    }

    pub fn all() -> Self {
        Self::with_kind(SubsetKind::All)
    }

    /// `a Z + b`; the sign of `a` is normalized away.
    pub fn ap(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let a = a.into();
        if a.is_zero() {
            return Err(Error::DegenerateSubset("arithmetic progression with a = 0"));
        }
        Ok(Self::with_kind(SubsetKind::Ap {
            a: a.abs(),
            b: b.into(),
        }))
    }

    pub fn squares() -> Self {
        Self::with_kind(SubsetKind::Squares)
    }

    pub fn primes() -> Self {
        Self::with_kind(SubsetKind::Primes)
    }

    /// Finite set; repeated elements collapse.
    pub fn finite<I, T>(elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let set: BTreeSet<BigInt> = elements.into_iter().map(Into::into).collect();
        if set.is_empty() {
            return Err(Error::DegenerateSubset("empty finite set"));
        }
        Ok(Self::with_kind(SubsetKind::Finite(
            set.into_iter().collect(),
        )))
    }

    pub fn with_search_cap(mut self, cap: u64) -> Self {
        self.search_cap = cap;
        self
    }

    pub fn kind(&self) -> &SubsetKind {
        &self.kind
    }

    pub fn search_cap(&self) -> u64 {
        self.search_cap
    }

    /// Number of elements for finite subsets.
    pub fn cardinality(&self) -> Option<usize> {
        match &self.kind {
            SubsetKind::Finite(e) => Some(e.len()),
            _ => None,
        }
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        match &self.kind {
            SubsetKind::All => true,
            SubsetKind::Ap { a, b } => (x - b).mod_floor(a).is_zero(),
            SubsetKind::Squares => {
                if x.is_negative() {
                    return false;
                }
                let r = x.sqrt();
                &(&r * &r) == x
            }
            SubsetKind::Primes => x.is_positive() && is_prime(x),
            SubsetKind::Finite(e) => e.binary_search(x).is_ok(),
        }
    }

    /// Elements in enumeration order.
    pub fn iter(&self) -> Box<dyn Iterator<Item = BigInt> + '_> {
        match &self.kind {
            SubsetKind::All => Box::new((0u64..).map(BigInt::from)),
            SubsetKind::Ap { a, b } => Box::new((0u64..).map(move |n| b + a * BigInt::from(n))),
            SubsetKind::Squares => Box::new((0u64..).map(|n| BigInt::from(n) * BigInt::from(n))),
            SubsetKind::Primes => Box::new((2u64..).filter(|&n| is_prime_u64(n)).map(BigInt::from)),
            SubsetKind::Finite(e) => Box::new(e.iter().cloned()),
        }
    }

    /// The first `n` elements in enumeration order (fewer for small finite sets).
    pub fn enumerate(&self, n: usize) -> Vec<BigInt> {
        self.iter().take(n).collect()
    }

    /// Whether some element of `S` is congruent to `r` modulo `p^m`.
    pub fn meets_residue(&self, r: &BigInt, p: u64, m: u32) -> bool {
        let q = pow_big(p, m);
        let r = r.mod_floor(&q);
        match &self.kind {
            SubsetKind::All => true,
            SubsetKind::Ap { a, b } => (&r - b).mod_floor(&a.gcd(&q)).is_zero(),
            SubsetKind::Squares => is_square_mod_prime_power(&r, p, m),
            SubsetKind::Primes => !(&r % p).is_zero() || r == BigInt::from(p).mod_floor(&q),
            SubsetKind::Finite(e) => e.iter().any(|x| x.mod_floor(&q) == r),
        }
    }

    /// Residues `r` in `[0, p^m)` met by `S`, ascending.
    ///
    /// Squares are found by exhausting `x^2` for `x` in `[0, p^m)`; primes use
    /// the units modulo `p^m` plus the class of `p` itself.
    pub fn residues_mod(&self, p: u64, m: u32) -> Vec<BigInt> {
        let q = pow_big(p, m);
        match &self.kind {
            SubsetKind::Squares => {
                let set: BTreeSet<BigInt> = upto(&q).map(|x| (&x * &x).mod_floor(&q)).collect();
                set.into_iter().collect()
            }
            SubsetKind::Finite(e) => {
                let set: BTreeSet<BigInt> = e.iter().map(|x| x.mod_floor(&q)).collect();
                set.into_iter().collect()
            }
            _ => upto(&q).filter(|r| self.meets_residue(r, p, m)).collect(),
        }
    }

    /// First element of `S` in enumeration order that is congruent to `r`
    /// modulo `p^m`.
    pub fn representative(&self, r: &BigInt, p: u64, m: u32) -> Result<BigInt> {
        let q = pow_big(p, m);
        let r = r.mod_floor(&q);
        let missing = || Error::NoSuchResidue {
            residue: r.clone(),
            modulus: q.clone(),
        };
        match &self.kind {
            SubsetKind::All => Ok(r.clone()),
            SubsetKind::Ap { a, b } => {
                let g = a.gcd(&q);
                let diff = &r - b;
                if !diff.mod_floor(&g).is_zero() {
                    return Err(missing());
                }
                let step = &q / &g;
                let inv = mod_inverse(&(a / &g), &step).expect("a/g is a unit mod q/g");
                let n = ((&diff / &g) * inv).mod_floor(&step);
                Ok(b + a * n)
            }
            SubsetKind::Squares => {
                if !is_square_mod_prime_power(&r, p, m) {
                    return Err(missing());
                }
                smallest_square_root_mod(&r, &q)
                    .map(|n| &n * &n)
                    .ok_or_else(missing)
            }
            SubsetKind::Primes => {
                let bp = BigInt::from(p);
                if r == bp.mod_floor(&q) {
                    return Ok(bp);
                }
                if (&r % p).is_zero() {
                    return Err(missing());
                }
                let cap = BigInt::from(self.search_cap);
                let mut c = r.clone();
                while c <= cap {
                    if is_prime(&c) {
                        return Ok(c);
                    }
                    c += &q;
                }
                Err(Error::SearchCapExceeded {
                    residue: r,
                    modulus: q,
                    cap: self.search_cap,
                })
            }
            SubsetKind::Finite(e) => e
                .iter()
                .find(|x| x.mod_floor(&q) == r)
                .cloned()
                .ok_or_else(missing),
        }
    }

    /// Number of residue classes modulo `p` that `S` meets.
    pub fn s_pi(&self, p: u64) -> u64 {
        match &self.kind {
            SubsetKind::All | SubsetKind::Primes => p,
            SubsetKind::Ap { a, .. } => {
                if (a % p).is_zero() {
                    1
                } else {
                    p
                }
            }
            SubsetKind::Squares => {
                if p == 2 {
                    2
                } else {
                    p.div_ceil(2)
                }
            }
            SubsetKind::Finite(e) => {
                let set: BTreeSet<BigInt> =
                    e.iter().map(|x| x.mod_floor(&BigInt::from(p))).collect();
                set.len() as u64
            }
        }
    }
}

/// Smallest `n >= 0` with `n^2 = r (mod q)`; such an `n` lies in `[0, q)`.
fn smallest_square_root_mod(r: &BigInt, q: &BigInt) -> Option<BigInt> {
    if let (Some(q64), Some(r64)) = (q.to_u64(), r.to_u64()) {
        let q128 = q64 as u128;
        return (0..q64)
            .find(|&n| (n as u128 * n as u128) % q128 == r64 as u128)
            .map(BigInt::from);
    }
    upto(q).find(|n| (n * n).mod_floor(q) == *r)
}

impl fmt::Display for SubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SubsetKind::All => f.write_str("Z"),
            SubsetKind::Ap { a, b } => write!(f, "ap:{a},{b}"),
            SubsetKind::Squares => f.write_str("squares"),
            SubsetKind::Primes => f.write_str("primes"),
            SubsetKind::Finite(e) => {
                f.write_str("finite:")?;
                for (i, x) in e.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_int_list(text: &str, original: &str) -> Result<Vec<BigInt>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidSubset(original.to_string()))
        })
        .collect()
}

/// `Z` | `ap:a,b` | `squares` | `primes` | `finite:e1,e2,...`, case-insensitive.
impl FromStr for SubsetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim().to_ascii_lowercase();
        let invalid = || Error::InvalidSubset(s.to_string());
        match text.as_str() {
            "z" | "all" => return Ok(SubsetSpec::all()),
            "squares" => return Ok(SubsetSpec::squares()),
            "primes" => return Ok(SubsetSpec::primes()),
            _ => {}
        }
        let (head, rest) = text.split_once(':').ok_or_else(invalid)?;
        match head.trim() {
            "ap" => {
                let v = parse_int_list(rest, s)?;
                let [a, b] = <[BigInt; 2]>::try_from(v).map_err(|_| invalid())?;
                SubsetSpec::ap(a, b)
            }
            "finite" => SubsetSpec::finite(parse_int_list(rest, s)?),
            _ => Err(invalid()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn residues_examples() {
        assert_eq!(SubsetSpec::primes().residues_mod(2, 1), b(&[0, 1]));
        assert_eq!(SubsetSpec::squares().residues_mod(3, 1), b(&[0, 1]));
        assert_eq!(SubsetSpec::all().residues_mod(5, 2).len(), 25);
        assert_eq!(SubsetSpec::squares().residues_mod(2, 3), b(&[0, 1, 4]));
        assert_eq!(SubsetSpec::ap(2, 1).unwrap().residues_mod(2, 2), b(&[1, 3]));
        assert_eq!(
            SubsetSpec::primes().residues_mod(3, 2),
            b(&[1, 2, 3, 4, 5, 7, 8])
        );
    }

    #[test]
    fn representative_examples() {
        let primes = SubsetSpec::primes();
        assert_eq!(primes.representative(&1.into(), 2, 2).unwrap(), 5.into());
        assert_eq!(primes.representative(&0.into(), 3, 1).unwrap(), 3.into());
        assert!(matches!(
            primes.representative(&6.into(), 3, 2),
            Err(Error::NoSuchResidue { .. })
        ));
        assert!(matches!(
            SubsetSpec::squares().representative(&2.into(), 2, 2),
            Err(Error::NoSuchResidue { .. })
        ));
        assert_eq!(
            SubsetSpec::ap(2, 1)
                .unwrap()
                .representative(&3.into(), 2, 2)
                .unwrap(),
            3.into()
        );
        assert_eq!(
            SubsetSpec::squares()
                .representative(&4.into(), 3, 2)
                .unwrap(),
            4.into()
        );
        assert_eq!(
            SubsetSpec::squares()
                .representative(&7.into(), 3, 2)
                .unwrap(),
            16.into()
        );
        let fin = SubsetSpec::finite([10, 3, 7]).unwrap();
        assert_eq!(fin.representative(&1.into(), 3, 1).unwrap(), 7.into());
    }

    #[test]
    fn search_cap_is_a_distinct_error() {
        let primes = SubsetSpec::primes().with_search_cap(50);
        assert!(matches!(
            primes.representative(&1.into(), 2, 6),
            Err(Error::SearchCapExceeded { cap: 50, .. })
        ));
        // 193 is the smallest prime = 1 mod 64
        let roomy = SubsetSpec::primes().with_search_cap(200);
        assert_eq!(roomy.representative(&1.into(), 2, 6).unwrap(), 193.into());
    }

    #[test]
    fn s_pi_examples() {
        assert_eq!(SubsetSpec::all().s_pi(3), 3);
        assert_eq!(SubsetSpec::primes().s_pi(2), 2);
        assert_eq!(SubsetSpec::squares().s_pi(5), 3);
        assert_eq!(SubsetSpec::ap(6, 1).unwrap().s_pi(3), 1);
        assert_eq!(SubsetSpec::finite([0, 3, 6, 1]).unwrap().s_pi(3), 2);
    }

    #[test]
    fn s_pi_counts_residues() {
        let subsets = [
            SubsetSpec::all(),
            SubsetSpec::primes(),
            SubsetSpec::squares(),
            SubsetSpec::ap(6, 1).unwrap(),
            SubsetSpec::ap(4, 3).unwrap(),
        ];
        for s in &subsets {
            for p in [2u64, 3, 5, 7, 11, 13] {
                let n = s.residues_mod(p, 1).len() as u64;
                assert_eq!(s.s_pi(p), n, "{s} at {p}");
                assert!(n <= p);
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(SubsetSpec::primes().enumerate(5), b(&[2, 3, 5, 7, 11]));
        assert_eq!(SubsetSpec::squares().enumerate(4), b(&[0, 1, 4, 9]));
        assert_eq!(SubsetSpec::ap(3, 1).unwrap().enumerate(3), b(&[1, 4, 7]));
        assert_eq!(
            SubsetSpec::finite([5, -1, 5]).unwrap().enumerate(9),
            b(&[-1, 5])
        );
    }

    #[test]
    fn membership() {
        let ap = SubsetSpec::ap(-3, 1).unwrap();
        assert!(ap.contains(&(-2).into()) && !ap.contains(&0.into()));
        assert!(SubsetSpec::squares().contains(&49.into()));
        assert!(!SubsetSpec::squares().contains(&50.into()));
        assert!(!SubsetSpec::primes().contains(&(-3).into()));
        assert!(SubsetSpec::primes().contains(&97.into()));
    }

    #[test]
    fn square_criterion_matches_exhaustion() {
        for p in [2u64, 3, 5, 7] {
            for m in 1..=5u32 {
                let q = pow_big(p, m);
                if q > BigInt::from(1000) {
                    continue;
                }
                let exhaustive = SubsetSpec::squares().residues_mod(p, m);
                let by_criterion: Vec<BigInt> = upto(&q)
                    .filter(|r| is_square_mod_prime_power(r, p, m))
                    .collect();
                assert_eq!(exhaustive, by_criterion, "p={p} m={m}");
            }
        }
    }

    #[test]
    fn parsing() {
        assert_eq!("Z".parse::<SubsetSpec>().unwrap(), SubsetSpec::all());
        assert_eq!(
            " PRIMES ".parse::<SubsetSpec>().unwrap(),
            SubsetSpec::primes()
        );
        assert_eq!(
            "ap:2,1".parse::<SubsetSpec>().unwrap(),
            SubsetSpec::ap(2, 1).unwrap()
        );
        assert_eq!(
            "Finite:-3, 4,0".parse::<SubsetSpec>().unwrap(),
            SubsetSpec::finite([-3, 4, 0]).unwrap()
        );
        assert!("ap:0,1".parse::<SubsetSpec>().is_err());
        assert!("ap:1".parse::<SubsetSpec>().is_err());
        assert!("cubes".parse::<SubsetSpec>().is_err());
        assert!("finite:".parse::<SubsetSpec>().is_err());
        for s in ["Z", "ap:3,-2", "squares", "primes", "finite:-1,0,8"] {
            assert_eq!(s.parse::<SubsetSpec>().unwrap().to_string(), s);
        }
    }
}
