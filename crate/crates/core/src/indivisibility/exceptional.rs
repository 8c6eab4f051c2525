use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactarith::{prime_factors, ExactRational};

/// `A(p, lambda_p)`: primes dividing `lambda_p - chi(p) eps (p^{k-1} + p^{k-2})`
/// for some `eps = +-1`, together with the primes dividing `p(p - 1)`.
pub fn exceptional_set(
    p: i64,
    lambda_p: &ExactRational,
    k: i64,
    chi_p: i8,
) -> Result<BTreeSet<u64>> {
    if p < 2 || k < 2 {
        return Err(Error::arg(format!(
            "exceptional_set needs p >= 2, k >= 2 (p={p}, k={k})"
        )));
    }
    let lambda = lambda_p
        .to_integer()
        .ok_or_else(|| Error::arg(format!("eigenvalue {lambda_p} is not an integer")))?;
    let base = BigInt::from(p);
    let t =
        num_traits::pow(base.clone(), (k - 1) as usize) + num_traits::pow(base, (k - 2) as usize);
    let t = t * BigInt::from(chi_p);

    let mut out: BTreeSet<u64> = prime_factors((p * (p - 1)) as u64).into_iter().collect();
    for eps in [1i64, -1] {
        let a: BigInt = &lambda - &t * BigInt::from(eps);
        if a.is_zero() {
            return Err(Error::InfiniteSet(lambda_p.to_string()));
        }
        let a = a
            .abs()
            .to_u64()
            .ok_or_else(|| Error::arg(format!("|{a}| exceeds the 64-bit factorization range")))?;
        out.extend(prime_factors(a));
    }
    Ok(out)
}

/// Intersection of a nonempty family; `None` for an empty family.
pub fn exceptional_intersection<'a>(
    sets: impl IntoIterator<Item = &'a BTreeSet<u64>>,
) -> Option<BTreeSet<u64>> {
    sets.into_iter()
        .fold(None, |acc: Option<BTreeSet<u64>>, s| match acc {
            None => Some(s.clone()),
            Some(a) => Some(a.intersection(s).copied().collect()),
        })
}
