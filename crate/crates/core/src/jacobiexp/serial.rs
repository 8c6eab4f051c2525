//! JSON and CSV forms of an expansion.
//!
//! JSON: `{"signature": {"k", "m", "N", "char_disc"}, "bound", "coeffs": [[D, rho, "num/den"], ...]}`
//! with coefficients in `(|D|, rho)` order so output is byte-stable.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{ExpansionBuilder, FormSignature, JacobiExpansion, OrbitKey};
use crate::error::Result;
use crate::lvalues::QuadCharacter;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureDoc {
    pub k: i64,
    pub m: i64,
    #[serde(rename = "N")]
    pub level: i64,
    pub char_disc: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionDoc {
    pub signature: SignatureDoc,
    pub bound: u64,
    pub coeffs: Vec<(i64, i64, String)>,
}

impl From<&FormSignature> for SignatureDoc {
    fn from(s: &FormSignature) -> Self {
        SignatureDoc {
            k: s.weight(),
            m: s.index(),
            level: s.level(),
            char_disc: s.character().map(|c| c.discriminant()),
        }
    }
}

impl TryFrom<&SignatureDoc> for FormSignature {
    type Error = crate::Error;
    fn try_from(d: &SignatureDoc) -> Result<Self> {
        let character = d.char_disc.map(QuadCharacter::new).transpose()?;
        FormSignature::new(d.k, d.m, d.level, character)
    }
}

impl JacobiExpansion {
    pub fn to_doc(&self) -> ExpansionDoc {
        ExpansionDoc {
            signature: self.signature().into(),
            bound: self.bound(),
            coeffs: self
                .iter()
                .map(|(k, v)| (k.disc, k.rho, v.to_string()))
                .collect(),
        }
    }

    /// Validates every key through the builder, so malformed or conflicting
    /// documents are rejected.
    pub fn from_doc(doc: &ExpansionDoc) -> Result<Self> {
        let sig = FormSignature::try_from(&doc.signature)?;
        let mut b = ExpansionBuilder::new(sig, doc.bound);
        for (disc, rho, v) in &doc.coeffs {
            b.set_key(OrbitKey::new(*disc, *rho), v.parse()?)?;
        }
        Ok(b.seal())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(&self.to_doc())?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_doc(&serde_json::from_str(s)?)
    }

    /// CSV table `D,rho,numerator,denominator`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["D", "rho", "numerator", "denominator"])?;
        for (k, v) in self.iter() {
            w.write_record([
                k.disc.to_string(),
                k.rho.to_string(),
                v.numer().to_string(),
                v.denom().to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is ascii"))
    }
}
