use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{exceptional_intersection, exceptional_set, FundamentalEnumerator, LocalConditions};
use crate::error::{Error, Result};
use crate::exactarith::{is_prime, nu_ell, ExactRational, LAdicValuation};
use crate::jacobiexp::{JacobiExpansion, SignatureDoc};
use crate::operators::detect_eigenvalue;

/// Width in `|D|` of one work unit, and the checkpoint cadence.
pub const CHECKPOINT_INTERVAL: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanHit {
    #[serde(rename = "D")]
    pub disc: i64,
    pub rho: i64,
    pub coeff: ExactRational,
}

/// Why a prime `ell` falls outside "almost all".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExclusionClause {
    /// `ell` lies in the intersection of `A(p, lambda_p)` over the scan primes.
    HeckeIntersection,
    /// `ell` lies in `A(p_j, lambda_{p_j})` for a local-condition prime.
    LocalCondition(i64),
    /// Every coefficient with `(r, m) = 1` inside the bound is divisible by `ell`.
    TrivialCoefficients,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ScanStatus {
    Confirmed,
    Inconclusive,
}

/// Hecke data at one prime. `eigenvalue` is `None` when `phi` is not an
/// eigenfunction there or the expansion is too short to certify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenData {
    pub p: i64,
    pub eigenvalue: Option<ExactRational>,
    pub certified_bound: u64,
    pub exceptional: Option<BTreeSet<u64>>,
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Primes whose `A`-sets are intersected.
    pub hecke_primes: Vec<i64>,
    /// `|D|` limit; defaults to the expansion's bound.
    pub bound: Option<u64>,
    /// Worker count; defaults to available parallelism.
    pub threads: Option<usize>,
    pub checkpoint: Option<PathBuf>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            hecke_primes: vec![5, 7, 11, 13],
            bound: None,
            threads: None,
            checkpoint: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub ell: u64,
    pub bound: u64,
    pub conditions: LocalConditions,
    /// Intersection of the computed `A`-sets; `None` if none was computable.
    pub exceptional_set: Option<BTreeSet<u64>>,
    pub exceptional: bool,
    pub excluded_by: Vec<ExclusionClause>,
    pub eigen: Vec<EigenData>,
    pub seed: Option<ScanHit>,
    pub status: ScanStatus,
    pub hits: Vec<ScanHit>,
    pub examined: u64,
}

impl ScanReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Hit table `D,rho,coeff`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["D", "rho", "coeff"])?;
        for h in &self.hits {
            w.write_record([h.disc.to_string(), h.rho.to_string(), h.coeff.to_string()])?;
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

/// Resumable scan state: everything below `next_abs` has been processed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCheckpoint {
    pub signature: SignatureDoc,
    pub ell: u64,
    pub bound: u64,
    pub conditions: LocalConditions,
    pub next_abs: u64,
    pub examined: u64,
    pub hits: Vec<ScanHit>,
}

impl ScanCheckpoint {
    fn load(path: &Path) -> Result<Option<Self>> {
        match std::fs::read_to_string(path) {
            Ok(s) => Ok(Some(serde_json::from_str(&s)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    fn store(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string(self)?)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    fn matches(&self, other: &ScanCheckpoint) -> bool {
        self.signature == other.signature
            && self.ell == other.ell
            && self.bound == other.bound
            && self.conditions == other.conditions
    }
}

fn is_unit(v: LAdicValuation) -> bool {
    v == LAdicValuation::Finite(0)
}

fn scan_range(
    phi: &JacobiExpansion,
    ell: u64,
    conditions: &LocalConditions,
    lo: u64,
    hi: u64,
) -> Result<(Vec<ScanHit>, u64)> {
    let (m, level) = (phi.index(), phi.level());
    let mut hits = Vec::new();
    let mut examined = 0;
    for (disc, rho) in FundamentalEnumerator::range(lo, hi, m, level, conditions.clone()) {
        for j in 0..level {
            let r = rho + 2 * m * j;
            let n = (r * r - disc) / (4 * m);
            let c = phi.coeff(n, r)?;
            examined += 1;
            if is_unit(nu_ell(&c, ell)?) {
                hits.push(ScanHit {
                    disc,
                    rho: r,
                    coeff: c,
                });
            }
        }
    }
    Ok((hits, examined))
}

fn eigen_data(phi: &JacobiExpansion, p: i64) -> Result<EigenData> {
    let report = match detect_eigenvalue(phi, p) {
        Ok(r) => r,
        Err(Error::Truncation { .. }) | Err(Error::Argument(_)) => {
            return Ok(EigenData {
                p,
                eigenvalue: None,
                certified_bound: 0,
                exceptional: None,
            })
        }
        Err(e) => return Err(e),
    };
    let eigenvalue = report.eigenvalue().cloned();
    let exceptional = match &eigenvalue {
        Some(l) if l.is_integer() => {
            Some(exceptional_set(p, l, phi.weight(), phi.signature().chi(p))?)
        }
        _ => None,
    };
    Ok(EigenData {
        p,
        eigenvalue,
        certified_bound: report.certified_bound,
        exceptional,
    })
}

/// Tests `nu_ell(c(n, r)) = 0` over every enumerated fundamental `(D, rho)`
/// with `|D| <= bound`. At level `N > 1` each `rho mod 2m` is tried in all of
/// its lifts `rho + 2m j mod 2mN`.
pub fn scan(
    phi: &JacobiExpansion,
    ell: u64,
    conditions: &LocalConditions,
    options: &ScanOptions,
) -> Result<ScanReport> {
    let (m, level) = (phi.index(), phi.level());
    if !is_prime(ell) {
        return Err(Error::arg(format!("ell = {ell} is not prime")));
    }
    if (2 * m * level).gcd(&(ell as i64)) != 1 {
        return Err(Error::arg(format!(
            "ell = {ell} divides 2mN = {}",
            2 * m * level
        )));
    }
    conditions.check_coprime(m, level)?;
    let bound = options.bound.unwrap_or(phi.bound());
    if bound > phi.bound() {
        return Err(Error::truncation(bound, phi.bound()));
    }
    if bound == 0 {
        return Err(Error::arg("scan bound must be positive"));
    }
    let phi = &phi.truncate(bound)?;
    if let Some((k, v)) = phi.iter().find(|(_, v)| !v.is_integer()) {
        return Err(Error::arg(format!(
            "coefficient {v} at (D, rho) = ({}, {}) is not integral; normalize first",
            k.disc, k.rho
        )));
    }

    let mut primes: Vec<i64> = options
        .hecke_primes
        .iter()
        .copied()
        .chain(conditions.entries().iter().map(|c| c.p))
        .filter(|&p| p > 1 && is_prime(p as u64) && (2 * m * level).gcd(&p) == 1)
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let eigen: Vec<EigenData> = primes
        .iter()
        .map(|&p| eigen_data(phi, p))
        .collect::<Result<_>>()?;

    let intersection = exceptional_intersection(
        eigen
            .iter()
            .filter(|e| options.hecke_primes.contains(&e.p))
            .filter_map(|e| e.exceptional.as_ref()),
    );
    let mut excluded_by = Vec::new();
    if intersection.as_ref().is_some_and(|s| s.contains(&ell)) {
        excluded_by.push(ExclusionClause::HeckeIntersection);
    }
    for c in conditions.entries() {
        let in_a = eigen
            .iter()
            .find(|e| e.p == c.p)
            .and_then(|e| e.exceptional.as_ref())
            .is_some_and(|s| s.contains(&ell));
        if in_a {
            excluded_by.push(ExclusionClause::LocalCondition(c.p));
        }
    }
    let mut nontrivial = false;
    for (key, v) in phi.iter() {
        if key.rho.gcd(&m) == 1 && is_unit(nu_ell(v, ell)?) {
            nontrivial = true;
            break;
        }
    }
    if !nontrivial {
        excluded_by.push(ExclusionClause::TrivialCoefficients);
    }

    let mut seed = None;
    for (key, v) in phi.iter() {
        if key.disc < 0 && key.disc.gcd(&(m * level)) == 1 && is_unit(nu_ell(v, ell)?) {
            let (_, r) = phi.representative(*key);
            seed = Some(ScanHit {
                disc: key.disc,
                rho: r,
                coeff: v.clone(),
            });
            break;
        }
    }

    let mut state = ScanCheckpoint {
        signature: phi.signature().into(),
        ell,
        bound,
        conditions: conditions.clone(),
        next_abs: 1,
        examined: 0,
        hits: Vec::new(),
    };
    if let Some(path) = &options.checkpoint {
        if let Some(saved) = ScanCheckpoint::load(path)? {
            if !saved.matches(&state) {
                return Err(Error::Consistency(format!(
                    "checkpoint {} belongs to a different scan",
                    path.display()
                )));
            }
            state = saved;
        }
    }

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = options.threads {
        if t == 0 {
            return Err(Error::arg("thread count must be positive"));
        }
        pool = pool.num_threads(t);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::arg(format!("thread pool: {e}")))?;
    let wave = pool.current_num_threads() as u64;

    while state.next_abs <= bound {
        let starts: Vec<u64> = (0..wave)
            .map(|i| state.next_abs + i * CHECKPOINT_INTERVAL)
            .take_while(|&lo| lo <= bound)
            .collect();
        let results: Vec<Result<(Vec<ScanHit>, u64)>> = pool.install(|| {
            starts
                .par_iter()
                .map(|&lo| {
                    scan_range(
                        phi,
                        ell,
                        conditions,
                        lo,
                        (lo + CHECKPOINT_INTERVAL - 1).min(bound),
                    )
                })
                .collect()
        });
        for (lo, res) in starts.iter().zip(results) {
            let (hits, examined) = res?;
            state.hits.extend(hits);
            state.examined += examined;
            state.next_abs = lo + CHECKPOINT_INTERVAL;
            if let Some(path) = &options.checkpoint {
                state.store(path)?;
            }
        }
    }

    let status = if seed.is_some() && !state.hits.is_empty() {
        ScanStatus::Confirmed
    } else {
        ScanStatus::Inconclusive
    };
    Ok(ScanReport {
        ell,
        bound,
        conditions: conditions.clone(),
        exceptional: !excluded_by.is_empty(),
        exceptional_set: intersection,
        excluded_by,
        eigen,
        seed,
        status,
        hits: state.hits,
        examined: state.examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::{eisenstein_k1, integral_normalization};
    use crate::exactarith::{is_fundamental, kronecker};
    use crate::indivisibility::LocalCondition;
    use crate::jacobiexp::FormSignature;

    fn e41(bound: u64) -> JacobiExpansion {
        integral_normalization(&eisenstein_k1(4, bound).unwrap(), &[])
            .unwrap()
            .expansion
    }

    #[test]
    fn rejects_ell_dividing_2mn() {
        let phi = e41(50);
        assert!(matches!(
            scan(&phi, 2, &LocalConditions::none(), &ScanOptions::default()),
            Err(Error::Argument(_))
        ));
        assert!(scan(&phi, 4, &LocalConditions::none(), &ScanOptions::default()).is_err());
    }

    #[test]
    fn zero_expansion() {
        let phi = JacobiExpansion::zero(FormSignature::full(4, 1).unwrap(), 100);
        let rep = scan(&phi, 5, &LocalConditions::none(), &ScanOptions::default()).unwrap();
        assert!(rep.hits.is_empty());
        assert!(rep.examined > 0);
        assert_eq!(rep.status, ScanStatus::Inconclusive);
        assert!(rep
            .excluded_by
            .contains(&ExclusionClause::TrivialCoefficients));
    }

    #[test]
    fn hits_pass_every_filter() {
        let phi = e41(400);
        let cond = LocalConditions::new(vec![LocalCondition { p: 3, eps: -1 }]).unwrap();
        let rep = scan(
            &phi,
            7,
            &cond,
            &ScanOptions {
                hecke_primes: vec![5],
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!rep.hits.is_empty());
        for h in &rep.hits {
            assert!(is_fundamental(h.disc));
            assert_eq!(kronecker(h.disc, 3), -1);
            assert_eq!((h.rho * h.rho - h.disc).rem_euclid(4), 0);
            assert_eq!(nu_ell(&h.coeff, 7).unwrap(), LAdicValuation::Finite(0));
        }
        // 7 divides 3126 + 150 and 244 + 36
        assert_eq!(
            rep.excluded_by,
            vec![
                ExclusionClause::HeckeIntersection,
                ExclusionClause::LocalCondition(3)
            ]
        );
    }

    #[test]
    fn checkpoint_resume_and_thread_count_are_transparent() {
        let phi = e41(300);
        let none = LocalConditions::none();
        let plain = scan(&phi, 11, &none, &ScanOptions::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let opts = ScanOptions {
            threads: Some(3),
            checkpoint: Some(dir.path().join("state.json")),
            ..Default::default()
        };
        let first = scan(&phi, 11, &none, &opts).unwrap();
        let resumed = scan(&phi, 11, &none, &opts).unwrap();
        assert_eq!(plain, first);
        assert_eq!(plain, resumed);
        assert!(scan(&phi, 13, &none, &opts).is_err());
    }

    #[test]
    fn rejects_non_integral_input() {
        let phi = eisenstein_k1(4, 50)
            .unwrap()
            .scale(&ExactRational::new(1, 7).unwrap());
        assert!(scan(&phi, 5, &LocalConditions::none(), &ScanOptions::default()).is_err());
    }
}
