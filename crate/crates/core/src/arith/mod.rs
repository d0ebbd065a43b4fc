//! Exact integer, rational and polynomial kernels.

pub mod crt;
pub mod newton;
pub mod poly;
pub mod primes;
pub mod valuation;

pub use crt::{crt_solve, Congruence};
pub use newton::{from_newton_form, newton_form};
pub use poly::IntPoly;
pub use primes::{factor_integer, is_prime, is_prime_u64};
pub use valuation::{valuation, Valuation};
