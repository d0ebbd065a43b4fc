pub mod arith;
pub mod error;
pub mod factor;
pub mod irreducibility;
pub mod ivp;
pub mod options;
mod par;
pub mod parse;
pub mod sequences;
pub mod subset;

pub use arith::{
    crt_solve, factor_integer, is_prime, newton_form, valuation, Congruence, IntPoly, Valuation,
};
pub use error::{Error, Result};
pub use factor::{factor, splittings, Factorization};
pub use irreducibility::{
    blocked_by_sum, blocked_by_witness, is_irreducible, is_irreducible_prime_d,
    oracle_is_irreducible, split_exponent, split_exponent_at, verify_certificate, Certificate,
    Verdict, WitnessRecord,
};
pub use ivp::{
    fixed_divisor, is_image_primitive, is_member, IvpPoly, Membership, MembershipWitness,
};
pub use options::{Execution, Options};
pub use par::parallel_available;
pub use parse::{parse_int_poly, parse_polynomial};
pub use sequences::{
    build_d_sequence, build_d_sequence_from, build_d_sequence_with, build_pi_sequence,
    is_pi_sequence, verify_d_sequence, DSequence, PiSequence,
};
pub use subset::SubsetSpec;
