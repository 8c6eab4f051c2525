//! Jacobi Eisenstein series `E_{k,1}` from special L-values, and
//! `E_{k,m} = E_{k,1} | V_m`.
//!
//! For `D = r^2 - 4n < 0` the coefficient is `L_D(2 - k) / zeta(3 - 2k)`.
//! Every index-one orbit with `D = 0` is the orbit of `(0, 0)`; its
//! coefficient is normalized to 1.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactarith::{factorize, fundamental_decompose, primes_up_to, ExactRational};
use crate::jacobiexp::{valid_keys, FormSignature, JacobiExpansion};
use crate::lvalues::{imprimitive_correction, l_value_fundamental, zeta_negative};
use crate::operators::v_m;

fn check_weight(k: i64) -> Result<()> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::arg(format!(
            "Eisenstein series need even k >= 4, got {k}"
        )));
    }
    Ok(())
}

/// `L_D(2 - k)` for every discriminant `-bound <= D < 0`, sharing the
/// fundamental values.
pub fn l_value_table(k: i64, bound: u64) -> Result<BTreeMap<i64, ExactRational>> {
    let s = 2 - k;
    let discs: Vec<(i64, i64, u64)> = (1..=bound as i64)
        .map(|a| -a)
        .filter(|d| matches!(d.rem_euclid(4), 0 | 1))
        .map(|d| fundamental_decompose(d).map(|(d0, f)| (d, d0, f)))
        .collect::<Result<_>>()?;
    let fundamentals: BTreeSet<i64> = discs.iter().map(|&(_, d0, _)| d0).collect();
    let base: BTreeMap<i64, ExactRational> = fundamentals
        .into_par_iter()
        .map(|d0| l_value_fundamental(d0, s).map(|v| (d0, v)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();
    discs
        .into_par_iter()
        .map(|(d, d0, f)| {
            let l0 = &base[&d0];
            let v = if f == 1 {
                l0.clone()
            } else {
                l0 * ExactRational::from_bigint(imprimitive_correction(d0, f, s)?)
            };
            Ok((d, v))
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().collect())
}

/// `E_{k,1}` on `|D| <= bound`, level one.
pub fn eisenstein_k1(k: i64, bound: u64) -> Result<JacobiExpansion> {
    check_weight(k)?;
    let zeta = zeta_negative(3 - 2 * k)?;
    let lvals = l_value_table(k, bound)?;
    let sig = FormSignature::full(k, 1)?;
    let mut coeffs = BTreeMap::new();
    for key in valid_keys(&sig, bound) {
        let v = if key.disc == 0 {
            ExactRational::one()
        } else {
            lvals[&key.disc].checked_div(&zeta)?
        };
        coeffs.insert(key, v);
    }
    Ok(JacobiExpansion::from_parts(sig, bound, coeffs))
}

/// `E_{k,1} | V_m` on `|D| <= bound`.
pub fn eisenstein_km(k: i64, m: i64, bound: u64) -> Result<JacobiExpansion> {
    v_m(&eisenstein_k1(k, bound)?, m)
}

/// `zeta(3 - 2k) E_{k,1}`, whose coefficients are the raw values `L_D(2 - k)`.
pub fn l_series_eisenstein(k: i64, bound: u64) -> Result<JacobiExpansion> {
    Ok(eisenstein_k1(k, bound)?.scale(&zeta_negative(3 - 2 * k)?))
}

/// Primes `ell` with `(ell - 1) | 2(k - 1)`: the only possible denominator
/// primes of `L_D(2 - k)`.
pub fn carlitz_primes(k: i64) -> Vec<u64> {
    let twice = 2 * (k - 1) as u64;
    primes_up_to(twice + 1)
        .into_iter()
        .filter(|l| twice.is_multiple_of(l - 1))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Normalization {
    pub expansion: JacobiExpansion,
    /// Least positive integer clearing every denominator within the bound.
    pub scalar: ExactRational,
    /// Prime support of `scalar`, when it factors within 64 bits.
    pub scalar_primes: Option<Vec<u64>>,
}

/// Clears denominators: returns `c * phi` with `c` the lcm of the
/// denominators. If `allowed_primes` is nonempty, every prime dividing `c`
/// must be in it (e.g. [`carlitz_primes`] for `zeta(3-2k) E_{k,1}`).
pub fn integral_normalization(
    phi: &JacobiExpansion,
    allowed_primes: &[u64],
) -> Result<Normalization> {
    let lcm: BigInt = phi
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let scalar_primes = lcm
        .to_u64()
        .map(|n| factorize(n).into_iter().map(|(p, _)| p).collect::<Vec<_>>());
    if !allowed_primes.is_empty() {
        let mut rest = lcm.clone();
        for &p in allowed_primes {
            let bp = BigInt::from(p);
            while (&rest % &bp) == BigInt::from(0) {
                rest /= &bp;
            }
        }
        if !rest.is_one() {
            return Err(Error::Consistency(format!(
                "denominator-clearing scalar {lcm} has prime factors outside {allowed_primes:?}"
            )));
        }
    }
    let scalar = ExactRational::from_bigint(lcm);
    Ok(Normalization {
        expansion: phi.scale(&scalar),
        scalar,
        scalar_primes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobiexp::ExpansionBuilder;

    fn q(n: i64) -> ExactRational {
        ExactRational::from_int(n)
    }

    #[test]
    fn e41_coefficients() {
        let e = eisenstein_k1(4, 30).unwrap();
        assert_eq!(e.coeff(0, 0).unwrap(), q(1));
        assert_eq!(e.coeff(1, 1).unwrap(), q(56));
        assert_eq!(e.coeff(1, 0).unwrap(), q(126));
        assert_eq!(e.coeff(2, 1).unwrap(), q(576));
        assert_eq!(e.coeff(3, 0).unwrap(), q(2072));
        assert_eq!(e.coeff(4, 0).unwrap(), q(4158));
        // every singular orbit (r^2 = 4n) is the orbit of (0, 0)
        assert_eq!(e.coeff(4, 4).unwrap(), q(1));
        assert!(eisenstein_k1(3, 10).is_err());
        assert!(eisenstein_k1(2, 10).is_err());
    }

    #[test]
    fn index_raised_series() {
        assert_eq!(
            eisenstein_km(4, 1, 40).unwrap(),
            eisenstein_k1(4, 40).unwrap()
        );
        let e1 = eisenstein_k1(4, 40).unwrap();
        let e2 = eisenstein_km(4, 2, 40).unwrap();
        assert_eq!(e2.coeff(1, 1).unwrap(), q(576));
        assert_eq!(
            e2.coeff(2, 2).unwrap(),
            e1.coeff(4, 2).unwrap() + q(8) * q(56)
        );
        // D = 0 coefficients: sum over d | (n, r, m) of d^{k-1}
        assert_eq!(e2.coeff(0, 0).unwrap(), q(1 + 8));
        assert_eq!(e2.coeff(1, 2).unwrap(), q(126));
    }

    #[test]
    fn carlitz_prime_lists() {
        assert_eq!(carlitz_primes(4), vec![2, 3, 7]);
        assert_eq!(carlitz_primes(6), vec![2, 3, 11]);
        assert_eq!(carlitz_primes(8), vec![2, 3]);
    }

    #[test]
    fn normalization_examples() {
        let e = eisenstein_k1(4, 60).unwrap();
        let n = integral_normalization(&e, &[]).unwrap();
        assert_eq!(n.scalar, q(1));
        let sig = FormSignature::full(4, 1).unwrap();
        let mut b = ExpansionBuilder::new(sig, 10);
        b.set_coeff(1, 1, ExactRational::new(1, 6).unwrap())
            .unwrap();
        let n = integral_normalization(&b.seal(), &[]).unwrap();
        assert_eq!(n.scalar, q(6));
        assert_eq!(n.scalar_primes, Some(vec![2, 3]));
        let l = l_series_eisenstein(4, 500).unwrap();
        let n = integral_normalization(&l, &carlitz_primes(4)).unwrap();
        assert!(n
            .scalar_primes
            .unwrap()
            .iter()
            .all(|p| [2, 3, 7].contains(p)));
        assert!(n.expansion.iter().all(|(_, v)| v.is_integer()));
        assert!(integral_normalization(&l, &[2, 3]).is_err());
    }
}
