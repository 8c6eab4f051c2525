use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactarith::{factorize, fundamental_decompose, is_fundamental, nu_ell, LAdicValuation};
use crate::jacobiexp::JacobiExpansion;

/// `(n, r) ~ (f^2 n0, f r0)` with `D0 = r0^2 - 4m n0` fundamental.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalReduction {
    pub n0: i64,
    pub r0: i64,
    pub f: u64,
    pub d0: i64,
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let e = a.rem_euclid(p).extended_gcd(&p);
    e.x.rem_euclid(p)
}

fn shift(n: i64, r: i64, m: i64, level: i64, lambda: i64) -> (i64, i64) {
    (
        n + r * level * lambda + m * level * level * lambda * lambda,
        r + 2 * m * level * lambda,
    )
}

/// One descent step by `p`: move within the orbit until `p | r` and
/// `p^2 | n`, then divide.
fn descend(n: i64, r: i64, m: i64, level: i64, p: i64) -> Result<(i64, i64)> {
    let candidates: Vec<i64> = if p == 2 {
        (0..4).collect()
    } else {
        let inv = mod_inverse(2 * m * level, p);
        vec![(-r * inv).rem_euclid(p)]
    };
    for lambda in candidates {
        let (n2, r2) = shift(n, r, m, level, lambda);
        if r2 % p == 0 && n2 % (p * p) == 0 {
            return Ok((n2 / (p * p), r2 / p));
        }
    }
    Err(Error::Consistency(format!(
        "no descent of (n, r) = ({n}, {r}) by p = {p}"
    )))
}

/// Writes `D = r^2 - 4mn = f^2 D0` and moves `(n, r)` along its orbit to a
/// representative `(f^2 n0, f r0)`.
pub fn reduce_to_fundamental(
    phi: &JacobiExpansion,
    n: i64,
    r: i64,
) -> Result<FundamentalReduction> {
    let (m, level) = (phi.index(), phi.level());
    let disc = r * r - 4 * m * n;
    if disc >= 0 {
        return Err(Error::arg(format!("D = {disc} is not negative")));
    }
    if disc.gcd(&(m * level)) != 1 {
        return Err(Error::arg(format!(
            "D = {disc} is not coprime to mN = {}",
            m * level
        )));
    }
    let (d0, f) = fundamental_decompose(disc)?;
    let (mut n0, mut r0) = (n, r);
    for (p, e) in factorize(f) {
        for _ in 0..e {
            (n0, r0) = descend(n0, r0, m, level, p as i64)?;
        }
    }
    if r0 * r0 - 4 * m * n0 != d0 || !is_fundamental(d0) {
        return Err(Error::Consistency(format!(
            "descent of ({n}, {r}) ended at ({n0}, {r0}), not at D0 = {d0}"
        )));
    }
    let fi = f as i64;
    if disc.unsigned_abs() <= phi.bound() && phi.coeff(n, r)? != phi.coeff(fi * fi * n0, fi * r0)? {
        return Err(Error::Consistency(format!(
            "c({n}, {r}) differs from c(f^2 n0, f r0) for (n0, r0, f) = ({n0}, {r0}, {f})"
        )));
    }
    Ok(FundamentalReduction { n0, r0, f, d0 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationEntry {
    pub f: i64,
    pub valuation: LAdicValuation,
    pub holds: bool,
}

/// `nu_ell(c(f^2 n, f r)) >= nu_ell(c(n, r))` per `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub ell: u64,
    pub n: i64,
    pub r: i64,
    pub base_valuation: LAdicValuation,
    pub entries: Vec<RelationEntry>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }
}

pub fn hecke_relation_check(
    phi: &JacobiExpansion,
    ell: u64,
    n: i64,
    r: i64,
    f_list: &[i64],
) -> Result<RelationReport> {
    let (m, level) = (phi.index(), phi.level());
    let disc = r * r - 4 * m * n;
    if !is_fundamental(disc) || disc >= 0 {
        return Err(Error::arg(format!(
            "D = {disc} is not a negative fundamental discriminant"
        )));
    }
    let base_valuation = nu_ell(&phi.coeff(n, r)?, ell)?;
    let mut entries = Vec::with_capacity(f_list.len());
    for &f in f_list {
        if f == 0 || f.gcd(&(m * level)) != 1 {
            return Err(Error::arg(format!(
                "f = {f} is not coprime to mN = {}",
                m * level
            )));
        }
        let valuation = nu_ell(&phi.coeff(f * f * n, f * r)?, ell)?;
        entries.push(RelationEntry {
            f,
            valuation,
            holds: valuation >= base_valuation,
        });
    }
    Ok(RelationReport {
        ell,
        n,
        r,
        base_valuation,
        entries,
    })
}
