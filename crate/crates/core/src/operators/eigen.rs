use serde::Serialize;

use super::hecke_tp;
use crate::error::{Error, Result};
use crate::exactarith::ExactRational;
use crate::jacobiexp::{JacobiExpansion, OrbitKey};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eigenvalue {
    Certified(ExactRational),
    NotEigen,
}

/// Outcome of testing `phi | T_p = lambda_p phi` on `|D| <= certified_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeEigenReport {
    pub prime: i64,
    pub eigenvalue: Eigenvalue,
    pub certified_bound: u64,
    /// First orbit where the ratio disagreed, for `NotEigen`.
    pub witness: Option<OrbitKey>,
}

impl HeckeEigenReport {
    pub fn eigenvalue(&self) -> Option<&ExactRational> {
        match &self.eigenvalue {
            Eigenvalue::Certified(l) => Some(l),
            Eigenvalue::NotEigen => None,
        }
    }
}

#[derive(Serialize)]
struct ReportDoc {
    prime: i64,
    eigenvalue: Option<String>,
    certified_bound: u64,
    witness: Option<(i64, i64)>,
}

impl Serialize for HeckeEigenReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportDoc {
            prime: self.prime,
            eigenvalue: self.eigenvalue().map(|l| l.to_string()),
            certified_bound: self.certified_bound,
            witness: self.witness.map(|k| (k.disc, k.rho)),
        }
        .serialize(s)
    }
}

/// Takes the ratio at the first nonzero coefficient and confirms it on the
/// whole certifiable range.
pub fn detect_eigenvalue(phi: &JacobiExpansion, p: i64) -> Result<HeckeEigenReport> {
    let image = hecke_tp(phi, p)?;
    let bound = image.bound();
    let base = phi.truncate(bound)?;
    let (first_key, first_val) = base.iter().next().ok_or_else(|| {
        Error::arg(format!(
            "form vanishes on |D| <= {bound}; no eigenvalue to detect"
        ))
    })?;
    let lambda = image.coeff_at(*first_key)?.checked_div(first_val)?;

    let mismatch = image.all_keys().find(|key| {
        let lhs = image.get(key).cloned().unwrap_or_else(ExactRational::zero);
        let rhs = base
            .get(key)
            .map(|v| v * &lambda)
            .unwrap_or_else(ExactRational::zero);
        lhs != rhs
    });
    Ok(HeckeEigenReport {
        prime: p,
        eigenvalue: if mismatch.is_some() {
            Eigenvalue::NotEigen
        } else {
            Eigenvalue::Certified(lambda)
        },
        certified_bound: bound,
        witness: mismatch,
    })
}
