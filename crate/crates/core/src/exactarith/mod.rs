//! Exact integer and rational arithmetic plus the elementary number theory
//! the rest of the crate leans on.

mod bernoulli;
mod discriminant;
mod kronecker;
mod primes;
mod rational;
mod valuation;

pub use bernoulli::{bernoulli, bernoulli_table};
pub use discriminant::{fundamental_decompose, is_discriminant, is_fundamental};
pub use kronecker::kronecker;
pub use primes::{
    divisors, factorize, is_prime, moebius, prime_factors, primes_up_to, sigma_power,
};
pub use rational::ExactRational;
pub use valuation::{nu_ell, nu_ell_int, LAdicValuation};
