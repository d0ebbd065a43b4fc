use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::crt::Congruence;
use crate::ivp::MembershipWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a valid prime (must be at least 2)")]
    InvalidPrime(u64),

    #[error("inconsistent congruences: {} and {}", .0 .0, .0 .1)]
    Inconsistent(Box<(Congruence, Congruence)>),

    #[error("modulus must be positive, got {0}")]
    InvalidModulus(BigInt),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("interpolation point {0} appears more than once")]
    DuplicatePoint(BigInt),

    #[error("need at least {needed} interpolation points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("subset meets no element congruent to {residue} mod {modulus}")]
    NoSuchResidue { residue: BigInt, modulus: BigInt },

    #[error("no prime = {residue} mod {modulus} found below the search cap {cap}")]
    SearchCapExceeded {
        residue: BigInt,
        modulus: BigInt,
        cap: u64,
    },

    #[error(
        "sequence of length {requested} needs {needed} distinct elements, subset has {available}"
    )]
    SequenceTooLong {
        requested: usize,
        needed: usize,
        available: usize,
    },

    #[error("{0} is not an element of the subset")]
    NotInSubset(BigInt),

    #[error("denominator {0} has no prime divisors")]
    UnitDenominator(BigInt),

    #[error("cannot factor denominator {0}: prime factor exceeds 64 bits")]
    UnsupportedDenominator(BigInt),

    #[error("prime {prime} does not divide {d}")]
    PrimeNotInDenominator { prime: u64, d: BigInt },

    #[error("degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error(
        "polynomial of degree {degree} needs a sequence of length at least {degree}, got {length}"
    )]
    SequenceTooShort { degree: usize, length: usize },

    #[error("not a member of Int(S,Z): {0}")]
    NotAMember(Box<MembershipWitness>),

    #[error("not image primitive: every value is divisible by {divisor}")]
    NotImagePrimitive { divisor: BigInt },

    #[error("constant polynomial is a unit, not a candidate for irreducibility")]
    UnitPolynomial,

    #[error("fast path requires a prime denominator, got {0}")]
    WrongPath(BigInt),

    #[error("splitting {g1} * {g2} is unblocked but no divisor split certifies it")]
    UncertifiedSplitting { g1: String, g2: String },

    #[error("invalid subset description `{0}`")]
    InvalidSubset(String),

    #[error("invalid subset: {0}")]
    DegenerateSubset(&'static str),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    /// Errors caused by malformed user input rather than a failed computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::InvalidSubset(_) | Error::DegenerateSubset(_)
        )
    }
}
