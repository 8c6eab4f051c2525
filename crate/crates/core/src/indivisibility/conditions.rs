use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactarith::{is_prime, kronecker};

/// `(D / p) = eps` for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalCondition {
    pub p: i64,
    pub eps: i8,
}

impl LocalCondition {
    pub fn holds(&self, disc: i64) -> bool {
        kronecker(disc, self.p) == self.eps
    }
}

impl fmt::Display for LocalCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.p, if self.eps > 0 { "+1" } else { "-1" })
    }
}

/// Parses `p:eps`, e.g. `5:+1`, `7:-1`, `11:1`.
impl FromStr for LocalCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(format!(
                "local condition `{s}` is not of the form p:+1 or p:-1"
            ))
        };
        let (p, e) = s.split_once(':').ok_or_else(bad)?;
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let eps: i8 = e
            .trim()
            .trim_start_matches('+')
            .parse()
            .map_err(|_| bad())?;
        Ok(LocalCondition { p, eps })
    }
}

/// A finite set of local conditions on distinct odd primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LocalConditions {
    entries: Vec<LocalCondition>,
}

impl LocalConditions {
    pub fn none() -> Self {
        LocalConditions::default()
    }

    pub fn new(entries: Vec<LocalCondition>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &entries {
            if c.p < 3 || !is_prime(c.p as u64) {
                return Err(Error::arg(format!(
                    "local condition prime {} is not an odd prime",
                    c.p
                )));
            }
            if c.eps != 1 && c.eps != -1 {
                return Err(Error::arg(format!(
                    "local condition sign {} is not +-1",
                    c.eps
                )));
            }
            if !seen.insert(c.p) {
                return Err(Error::arg(format!(
                    "local condition prime {} repeated",
                    c.p
                )));
            }
        }
        Ok(LocalConditions { entries })
    }

    pub fn entries(&self) -> &[LocalCondition] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every prime must be coprime to `mN`.
    pub fn check_coprime(&self, m: i64, level: i64) -> Result<()> {
        for c in &self.entries {
            if (m * level).gcd(&c.p) != 1 {
                return Err(Error::arg(format!(
                    "local condition prime {} divides mN = {}",
                    c.p,
                    m * level
                )));
            }
        }
        Ok(())
    }

    pub fn holds(&self, disc: i64) -> bool {
        self.entries.iter().all(|c| c.holds(disc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate() {
        let c: LocalCondition = "5:+1".parse().unwrap();
        assert_eq!(c, LocalCondition { p: 5, eps: 1 });
        assert_eq!("7:-1".parse::<LocalCondition>().unwrap().eps, -1);
        assert!("7".parse::<LocalCondition>().is_err());
        assert!(LocalConditions::new(vec![LocalCondition { p: 2, eps: 1 }]).is_err());
        assert!(LocalConditions::new(vec![LocalCondition { p: 9, eps: 1 }]).is_err());
        assert!(LocalConditions::new(vec![LocalCondition { p: 5, eps: 0 }]).is_err());
        let dup = vec![
            LocalCondition { p: 5, eps: 1 },
            LocalCondition { p: 5, eps: -1 },
        ];
        assert!(LocalConditions::new(dup).is_err());
        let ok = LocalConditions::new(vec![LocalCondition { p: 5, eps: 1 }]).unwrap();
        assert!(ok.check_coprime(1, 1).is_ok());
        assert!(ok.check_coprime(5, 1).is_err());
        assert!(ok.holds(-4));
        assert!(!ok.holds(-3));
    }
}
