use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactarith::{is_prime, kronecker, ExactRational};
use crate::jacobiexp::{valid_keys, JacobiExpansion, OrbitKey};

/// The case factor `C_p(n, r, m)` of the middle Hecke term.
pub fn hecke_case_factor(p: i64, n: i64, r: i64, m: i64) -> i64 {
    if m % p != 0 {
        let disc = r * r - 4 * m * n;
        p * kronecker(disc, p) as i64
    } else if r % p != 0 {
        0
    } else if n % p != 0 {
        -p
    } else {
        p * (p - 1)
    }
}

fn mod_inverse(a: i64, p: i64) -> Option<i64> {
    let e = a.extended_gcd(&p);
    (e.gcd == 1).then(|| e.x.rem_euclid(p))
}

#[derive(Clone, Copy)]
enum LambdaSum {
    /// All `lambda mod p`, the sum as written.
    Full,
    /// Only the residue that makes `r + 2mN lambda` divisible by `p` (valid when `p` does not divide `2mN`).
    Solved,
}

fn hecke_impl(phi: &JacobiExpansion, p: i64, mode: LambdaSum) -> Result<JacobiExpansion> {
    if p < 2 || !is_prime(p as u64) {
        return Err(Error::arg(format!("T_p needs a prime, got {p}")));
    }
    let sig = *phi.signature();
    let (k, m, level) = (sig.weight(), sig.index(), sig.level());
    if level % p == 0 {
        return Err(Error::arg(format!(
            "T_{p} is only defined for p coprime to the level {level}"
        )));
    }
    let p2 = (p * p) as u64;
    let bound = phi.bound() / p2;
    if bound == 0 {
        return Err(Error::truncation(p2, phi.bound()));
    }
    let chi_p = ExactRational::from_int(sig.chi(p) as i64);
    let chi_p2 = &chi_p * &chi_p;
    let middle_scale = &chi_p * ExactRational::int_pow(p, (k - 3) as i32);
    let last_scale = chi_p2 * ExactRational::int_pow(p, (2 * k - 3) as i32);

    let two_mn = 2 * m * level;
    let solved = match mode {
        LambdaSum::Solved => mod_inverse(two_mn.rem_euclid(p), p),
        LambdaSum::Full => None,
    };

    let keys: Vec<OrbitKey> = valid_keys(&sig, bound).collect();
    let entries: Vec<(OrbitKey, ExactRational)> = keys
        .par_iter()
        .map(|&key| {
            let (n, r) = phi.representative(key);
            let mut value = phi.coeff(p * p * n, p * r)?;

            let cp = hecke_case_factor(p, n, r, m);
            if cp != 0 {
                value += ExactRational::from_int(cp) * &middle_scale * phi.coeff(n, r)?;
            }

            let lambdas: Vec<i64> = match solved {
                Some(inv) => vec![(-r * inv).rem_euclid(p)],
                None => (0..p).collect(),
            };
            let mut tail = ExactRational::zero();
            for lambda in lambdas {
                let shifted_n = n + r * level * lambda + m * level * level * lambda * lambda;
                let shifted_r = r + two_mn * lambda;
                if shifted_r % p == 0 && shifted_n % (p * p) == 0 {
                    tail += phi.coeff(shifted_n / (p * p), shifted_r / p)?;
                }
            }
            if !tail.is_zero() {
                value += tail * &last_scale;
            }
            Ok((key, value))
        })
        .collect::<Result<_>>()?;
    Ok(JacobiExpansion::from_parts(
        sig,
        bound,
        entries.into_iter().collect(),
    ))
}

/// `phi | T_p` for a prime `p` coprime to the level. The output is certified
/// on `|D| <= bound / p^2`.
pub fn hecke_tp(phi: &JacobiExpansion, p: i64) -> Result<JacobiExpansion> {
    hecke_impl(phi, p, LambdaSum::Solved)
}

/// `T_p` with the `lambda`-sum taken over every residue mod `p`; kept as
/// the reference the optimized path is checked against.
pub fn hecke_tp_naive(phi: &JacobiExpansion, p: i64) -> Result<JacobiExpansion> {
    hecke_impl(phi, p, LambdaSum::Full)
}
