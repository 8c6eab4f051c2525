//! Theta decomposition `phi = sum_{mu mod 2m} h_mu theta_{m,mu}` of a level-one
//! expansion, with `h_mu = sum_D c_mu(D) q^{-D/4m}` and
//! `c_mu(D) = c((mu^2 - D)/4m, mu)`.
//!
//! Orbit keys are already `(D, r mod 2m)`, so decomposing is a re-indexing.
//! The components are plain coefficient lists; nothing here models their
//! half-integral-weight transformation behavior.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactarith::ExactRational;
use crate::jacobiexp::{ExpansionBuilder, FormSignature, JacobiExpansion, OrbitKey};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaComponents {
    pub index: i64,
    pub bound: u64,
    /// `components[mu]` lists `(D, c_mu(D))` by increasing `|D|`, one entry per `mu` in `0..2m`.
    pub components: Vec<Vec<(i64, ExactRational)>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ThetaDoc {
    pub m: i64,
    pub bound: u64,
    pub components: BTreeMap<u64, Vec<(i64, String)>>,
}

pub fn decompose(phi: &JacobiExpansion) -> Result<ThetaComponents> {
    if phi.level() != 1 {
        return Err(Error::arg(
            "theta decomposition is implemented for level one",
        ));
    }
    let m = phi.index();
    let mut components = vec![Vec::new(); 2 * m as usize];
    for (key, v) in phi.iter() {
        components[key.rho as usize].push((key.disc, v.clone()));
    }
    Ok(ThetaComponents {
        index: m,
        bound: phi.bound(),
        components,
    })
}

pub fn reconstruct(tc: &ThetaComponents, signature: FormSignature) -> Result<JacobiExpansion> {
    if signature.level() != 1 || signature.index() != tc.index {
        return Err(Error::SignatureMismatch(format!(
            "components of index {} cannot rebuild {signature:?}",
            tc.index
        )));
    }
    if tc.components.len() != 2 * tc.index as usize {
        return Err(Error::Consistency(format!(
            "expected {} components, found {}",
            2 * tc.index,
            tc.components.len()
        )));
    }
    let mut b = ExpansionBuilder::new(signature, tc.bound);
    for (mu, comp) in tc.components.iter().enumerate() {
        for (disc, v) in comp {
            b.set_key(OrbitKey::new(*disc, mu as i64), v.clone())?;
        }
    }
    Ok(b.seal())
}

impl ThetaComponents {
    /// `c_mu(D)`, zero when absent.
    pub fn get(&self, mu: i64, disc: i64) -> ExactRational {
        let mu = mu.rem_euclid(2 * self.index) as usize;
        self.components[mu]
            .iter()
            .find(|(d, _)| *d == disc)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn to_doc(&self) -> ThetaDoc {
        ThetaDoc {
            m: self.index,
            bound: self.bound,
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(mu, c)| {
                    (
                        mu as u64,
                        c.iter().map(|(d, v)| (*d, v.to_string())).collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &ThetaDoc) -> Result<Self> {
        let mut components = vec![Vec::new(); 2 * doc.m.max(0) as usize];
        for (mu, entries) in &doc.components {
            let slot = components
                .get_mut(*mu as usize)
                .ok_or_else(|| Error::Consistency(format!("component mu = {mu} outside 0..2m")))?;
            for (d, v) in entries {
                slot.push((*d, v.parse()?));
            }
        }
        Ok(ThetaComponents {
            index: doc.m,
            bound: doc.bound,
            components,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(&self.to_doc())?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_doc(&serde_json::from_str(s)?)
    }
}
