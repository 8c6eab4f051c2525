use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::primes::is_prime;
use super::ExactRational;
use crate::error::{Error, Result};

/// `ell`-adic valuation of a rational number. `Infinity` orders above every
/// finite value, so `min` over a family behaves like the infimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LAdicValuation {
    Finite(i64),
    Infinity,
}

impl LAdicValuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, LAdicValuation::Infinity)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            LAdicValuation::Finite(v) => Some(v),
            LAdicValuation::Infinity => None,
        }
    }
}

impl Add for LAdicValuation {
    type Output = LAdicValuation;
    fn add(self, rhs: LAdicValuation) -> LAdicValuation {
        match (self, rhs) {
            (LAdicValuation::Finite(a), LAdicValuation::Finite(b)) => LAdicValuation::Finite(a + b),
            _ => LAdicValuation::Infinity,
        }
    }
}

impl fmt::Display for LAdicValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LAdicValuation::Finite(v) => write!(f, "{v}"),
            LAdicValuation::Infinity => f.write_str("INFINITY"),
        }
    }
}

impl Serialize for LAdicValuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LAdicValuation::Finite(v) => s.serialize_i64(*v),
            LAdicValuation::Infinity => s.serialize_str("INFINITY"),
        }
    }
}

fn strip(n: &BigInt, ell: &BigInt) -> i64 {
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(ell);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Exponent of `ell` in a nonzero integer; `Infinity` for zero. Assumes `ell` prime.
pub fn nu_ell_int(n: &BigInt, ell: u64) -> LAdicValuation {
    if n.is_zero() {
        return LAdicValuation::Infinity;
    }
    LAdicValuation::Finite(strip(n, &BigInt::from(ell)))
}

/// Exponent of the prime `ell` in `x`, negative when `ell` divides the denominator.
pub fn nu_ell(x: &ExactRational, ell: u64) -> Result<LAdicValuation> {
    if !is_prime(ell) {
        return Err(Error::arg(format!("nu_ell: {ell} is not prime")));
    }
    if x.is_zero() {
        return Ok(LAdicValuation::Infinity);
    }
    let l = BigInt::from(ell);
    Ok(LAdicValuation::Finite(
        strip(x.numer(), &l) - strip(x.denom(), &l),
    ))
}
