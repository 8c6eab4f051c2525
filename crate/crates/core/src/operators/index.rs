use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactarith::{divisors, ExactRational};
use crate::jacobiexp::{valid_keys, JacobiExpansion, OrbitKey};

/// `phi | U_d (tau, z) = phi(tau, d z)`: index `m d^2`, `c'(n, r) = c(n, r/d)`.
///
/// Discriminants scale by `d^2`, so the image is certified on `|D| <= d^2 B`.
pub fn u_d(phi: &JacobiExpansion, d: i64) -> Result<JacobiExpansion> {
    if d < 1 {
        return Err(Error::arg(format!("U_d needs d >= 1, got {d}")));
    }
    if d == 1 {
        return Ok(phi.clone());
    }
    let sig = phi.signature().with_index(phi.index() * d * d)?;
    let old_modulus = phi.signature().rho_modulus();
    let new_modulus = sig.rho_modulus();
    let mut coeffs = BTreeMap::new();
    for (key, v) in phi.iter() {
        for t in 0..d {
            let rho = (d * (key.rho + old_modulus * t)).rem_euclid(new_modulus);
            coeffs.insert(OrbitKey::new(key.disc * d * d, rho), v.clone());
        }
    }
    let bound = phi.bound() * (d * d) as u64;
    Ok(JacobiExpansion::from_parts(sig, bound, coeffs))
}

/// Index-raising `V_m : J_{k,1} -> J_{k,m}`,
/// `c'(n, r) = sum_{d | (n, r, m)} d^{k-1} c(nm/d^2, r/d)`.
///
/// The `d`-th term reads the index-one coefficient at discriminant
/// `D'/d^2`, so the output is certified on the input's bound.
pub fn v_m(phi: &JacobiExpansion, m: i64) -> Result<JacobiExpansion> {
    if m < 1 {
        return Err(Error::arg(format!("V_m needs m >= 1, got {m}")));
    }
    if phi.index() != 1 || phi.level() != 1 {
        return Err(Error::arg(
            "V_m is implemented on index-one, level-one expansions",
        ));
    }
    if m == 1 {
        return Ok(phi.clone());
    }
    let k = phi.weight();
    let sig = phi.signature().with_index(m)?;
    let bound = phi.bound();
    let mut coeffs = BTreeMap::new();
    for key in valid_keys(&sig, bound) {
        let four_m = 4 * m;
        let n = (key.rho * key.rho - key.disc) / four_m;
        let r = key.rho;
        let g = n.gcd(&r).gcd(&m) as u64;
        let mut value = ExactRational::zero();
        for d in divisors(g).into_iter().map(|d| d as i64) {
            let c = phi.coeff(n * m / (d * d), r / d)?;
            if !c.is_zero() {
                value += ExactRational::int_pow(d, (k - 1) as i32) * c;
            }
        }
        coeffs.insert(key, value);
    }
    Ok(JacobiExpansion::from_parts(sig, bound, coeffs))
}
