use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_integer::Integer;

use super::FormSignature;
use crate::error::{Error, Result};
use crate::exactarith::{nu_ell, ExactRational, LAdicValuation};

/// Orbit coordinates `(D, rho)` with `D = r^2 - 4mn <= 0` and `rho = r mod 2mN`.
///
/// Keys order by `(|D|, rho)` ascending, which is the serialization order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrbitKey {
    pub disc: i64,
    pub rho: i64,
}

impl OrbitKey {
    pub fn new(disc: i64, rho: i64) -> Self {
        OrbitKey { disc, rho }
    }
}

impl Ord for OrbitKey {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.disc.unsigned_abs(), self.rho).cmp(&(other.disc.unsigned_abs(), other.rho))
    }
}

impl PartialOrd for OrbitKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_key(sig: &FormSignature, bound: u64, key: OrbitKey) -> Result<()> {
    if key.disc > 0 {
        return Err(Error::arg(format!(
            "discriminant {} > 0 is not holomorphic",
            key.disc
        )));
    }
    if key.rho < 0 || key.rho >= sig.rho_modulus() {
        return Err(Error::Consistency(format!(
            "rho = {} outside 0..{}",
            key.rho,
            sig.rho_modulus()
        )));
    }
    if (key.rho * key.rho - key.disc).rem_euclid(4 * sig.index()) != 0 {
        return Err(Error::Consistency(format!(
            "D = {} is not congruent to rho^2 = {}^2 mod 4m",
            key.disc, key.rho
        )));
    }
    if key.disc.unsigned_abs() > bound {
        return Err(Error::truncation(key.disc.unsigned_abs(), bound));
    }
    Ok(())
}

/// Every orbit key with `|D| <= bound`, in serialization order.
pub fn valid_keys(sig: &FormSignature, bound: u64) -> impl Iterator<Item = OrbitKey> {
    let modulus = sig.rho_modulus();
    let four_m = 4 * sig.index();
    (0..=bound as i64).flat_map(move |a| {
        let disc = -a;
        (0..modulus)
            .filter(move |rho| (rho * rho - disc).rem_euclid(four_m) == 0)
            .map(move |rho| OrbitKey { disc, rho })
    })
}

/// Mutable construction phase of an expansion. Orbits may be assigned once;
/// re-assigning the same value is accepted, a different value is an error.
#[derive(Clone, Debug)]
pub struct ExpansionBuilder {
    signature: FormSignature,
    bound: u64,
    entries: BTreeMap<OrbitKey, ExactRational>,
}

impl ExpansionBuilder {
    pub fn new(signature: FormSignature, bound: u64) -> Self {
        ExpansionBuilder {
            signature,
            bound,
            entries: BTreeMap::new(),
        }
    }

    pub fn signature(&self) -> &FormSignature {
        &self.signature
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Assigns the whole orbit of `(n, r)`.
    pub fn set_coeff(&mut self, n: i64, r: i64, value: ExactRational) -> Result<()> {
        let disc = r * r - 4 * self.signature.index() * n;
        let rho = r.rem_euclid(self.signature.rho_modulus());
        self.set_key(OrbitKey { disc, rho }, value)
    }

    pub fn set_key(&mut self, key: OrbitKey, value: ExactRational) -> Result<()> {
        check_key(&self.signature, self.bound, key)?;
        match self.entries.get(&key) {
            Some(old) if *old != value => Err(Error::Consistency(format!(
                "orbit (D={}, rho={}) already holds {old}, refusing {value}",
                key.disc, key.rho
            ))),
            Some(_) => Ok(()),
            None => {
                self.entries.insert(key, value);
                Ok(())
            }
        }
    }

    pub fn seal(self) -> JacobiExpansion {
        let mut coeffs = self.entries;
        coeffs.retain(|_, v| !v.is_zero());
        JacobiExpansion {
            signature: self.signature,
            bound: self.bound,
            coeffs,
        }
    }
}

/// Sealed, immutable truncated expansion. Every orbit with `|D| <= bound`
/// is represented; absent keys carry coefficient zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiExpansion {
    signature: FormSignature,
    bound: u64,
    coeffs: BTreeMap<OrbitKey, ExactRational>,
}

impl JacobiExpansion {
    pub fn zero(signature: FormSignature, bound: u64) -> Self {
        JacobiExpansion {
            signature,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a sealed expansion from already-validated nonzero entries.
    pub(crate) fn from_parts(
        signature: FormSignature,
        bound: u64,
        mut coeffs: BTreeMap<OrbitKey, ExactRational>,
    ) -> Self {
        debug_assert!(coeffs
            .keys()
            .all(|k| check_key(&signature, bound, *k).is_ok()));
        coeffs.retain(|_, v| !v.is_zero());
        JacobiExpansion {
            signature,
            bound,
            coeffs,
        }
    }

    pub fn signature(&self) -> &FormSignature {
        &self.signature
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn weight(&self) -> i64 {
        self.signature.weight()
    }

    pub fn index(&self) -> i64 {
        self.signature.index()
    }

    pub fn level(&self) -> i64 {
        self.signature.level()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored (nonzero) orbits.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients in `(|D|, rho)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&OrbitKey, &ExactRational)> {
        self.coeffs.iter()
    }

    pub fn key_of(&self, n: i64, r: i64) -> OrbitKey {
        OrbitKey {
            disc: r * r - 4 * self.index() * n,
            rho: r.rem_euclid(self.signature.rho_modulus()),
        }
    }

    /// The representative `(n, r)` with `r = rho` of an orbit key.
    pub fn representative(&self, key: OrbitKey) -> (i64, i64) {
        let four_m = 4 * self.index();
        (
            Integer::div_floor(&(key.rho * key.rho - key.disc), &four_m),
            key.rho,
        )
    }

    /// `c(n, r)`. Zero for `r^2 > 4mn`; an error beyond the certified bound.
    pub fn coeff(&self, n: i64, r: i64) -> Result<ExactRational> {
        let key = self.key_of(n, r);
        if key.disc > 0 {
            return Ok(ExactRational::zero());
        }
        self.coeff_at(key)
    }

    pub fn coeff_at(&self, key: OrbitKey) -> Result<ExactRational> {
        check_key(&self.signature, self.bound, key)?;
        Ok(self
            .coeffs
            .get(&key)
            .cloned()
            .unwrap_or_else(ExactRational::zero))
    }

    pub(crate) fn get(&self, key: &OrbitKey) -> Option<&ExactRational> {
        self.coeffs.get(key)
    }

    /// Every orbit key inside the bound, zero or not.
    pub fn all_keys(&self) -> impl Iterator<Item = OrbitKey> {
        valid_keys(&self.signature, self.bound)
    }

    fn check_compatible(&self, other: &JacobiExpansion) -> Result<()> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch(format!(
                "{:?} vs {:?}",
                self.signature, other.signature
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &JacobiExpansion) -> Result<JacobiExpansion> {
        self.check_compatible(other)?;
        let bound = self.bound.min(other.bound);
        let mut coeffs: BTreeMap<OrbitKey, ExactRational> = self
            .coeffs
            .iter()
            .filter(|(k, _)| k.disc.unsigned_abs() <= bound)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        for (k, v) in other
            .coeffs
            .iter()
            .filter(|(k, _)| k.disc.unsigned_abs() <= bound)
        {
            *coeffs.entry(*k).or_insert_with(ExactRational::zero) += v;
        }
        Ok(JacobiExpansion::from_parts(self.signature, bound, coeffs))
    }

    pub fn sub(&self, other: &JacobiExpansion) -> Result<JacobiExpansion> {
        self.add(&other.scale(&ExactRational::from_int(-1)))
    }

    pub fn scale(&self, c: &ExactRational) -> JacobiExpansion {
        let coeffs = self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect();
        JacobiExpansion::from_parts(self.signature, self.bound, coeffs)
    }

    /// Restricts to `|D| <= bound` (which must not exceed the current bound).
    pub fn truncate(&self, bound: u64) -> Result<JacobiExpansion> {
        if bound > self.bound {
            return Err(Error::truncation(bound, self.bound));
        }
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(k, _)| k.disc.unsigned_abs() <= bound)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        Ok(JacobiExpansion::from_parts(self.signature, bound, coeffs))
    }

    /// The same form viewed on the smaller group for level `new_level`, a
    /// multiple of the current level. Each orbit splits into
    /// `new_level / level` finer orbits carrying the same coefficient.
    pub fn with_level(&self, new_level: i64) -> Result<JacobiExpansion> {
        let level = self.level();
        if new_level < 1 || new_level % level != 0 {
            return Err(Error::arg(format!(
                "level {new_level} is not a multiple of {level}"
            )));
        }
        if new_level == level {
            return Ok(self.clone());
        }
        let signature = self.signature.with_level(new_level)?;
        let step = self.signature.rho_modulus();
        let mut coeffs = BTreeMap::new();
        for (k, v) in &self.coeffs {
            for j in 0..new_level / level {
                coeffs.insert(
                    OrbitKey {
                        disc: k.disc,
                        rho: k.rho + step * j,
                    },
                    v.clone(),
                );
            }
        }
        Ok(JacobiExpansion::from_parts(signature, self.bound, coeffs))
    }

    /// Equality as functions `(n, r) -> c(n, r)` on the common certified range,
    /// comparing across levels after lifting both sides to their common level.
    pub fn same_form(&self, other: &JacobiExpansion) -> Result<bool> {
        let (a, b) = (&self.signature, &other.signature);
        if a.weight() != b.weight() || a.index() != b.index() || a.character() != b.character() {
            return Err(Error::SignatureMismatch(format!("{a:?} vs {b:?}")));
        }
        let level = a.level().lcm(&b.level());
        let bound = self.bound.min(other.bound);
        let lhs = self.with_level(level)?.truncate(bound)?;
        let rhs = other.with_level(level)?.truncate(bound)?;
        Ok(lhs.coeffs == rhs.coeffs)
    }

    /// `min nu_ell(c)` over the stored coefficients: the infimum of the whole
    /// form restricted to `|D| <= bound`, not the true infimum.
    pub fn nu_ell_form(&self, ell: u64) -> Result<LAdicValuation> {
        let mut best = LAdicValuation::Infinity;
        for v in self.coeffs.values() {
            best = best.min(nu_ell(v, ell)?);
        }
        Ok(best)
    }

    /// Coefficient-wise map over stored entries, keeping signature and bound.
    pub(crate) fn map_entries(
        &self,
        mut f: impl FnMut(&OrbitKey, &ExactRational) -> ExactRational,
    ) -> JacobiExpansion {
        let coeffs = self.coeffs.iter().map(|(k, v)| (*k, f(k, v))).collect();
        JacobiExpansion::from_parts(self.signature, self.bound, coeffs)
    }

    /// Structural audit: every stored key is valid for the signature and bound.
    pub fn audit(&self) -> Result<()> {
        for k in self.coeffs.keys() {
            check_key(&self.signature, self.bound, *k)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(k: i64, m: i64, n: i64) -> FormSignature {
        FormSignature::new(k, m, n, None).unwrap()
    }

    fn q(n: i64) -> ExactRational {
        ExactRational::from_int(n)
    }

    fn sample() -> JacobiExpansion {
        let mut b = ExpansionBuilder::new(sig(4, 1, 1), 20);
        b.set_coeff(1, 1, q(56)).unwrap();
        b.set_coeff(0, 0, q(1)).unwrap();
        b.seal()
    }

    #[test]
    fn orbit_lookup() {
        let phi = sample();
        assert_eq!(phi.coeff(3, 3).unwrap(), q(56));
        assert_eq!(phi.coeff(1, -1).unwrap(), q(56));
        assert_eq!(phi.coeff(1, 3).unwrap(), ExactRational::zero()); // r^2 > 4mn
        assert_eq!(phi.coeff(1, 0).unwrap(), ExactRational::zero()); // in range, unset
        assert!(matches!(
            phi.coeff(6, 1),
            Err(Error::Truncation {
                requested: 23,
                bound: 20
            })
        ));
    }

    #[test]
    fn builder_conflicts() {
        let mut b = ExpansionBuilder::new(sig(4, 1, 1), 20);
        b.set_coeff(1, 1, q(56)).unwrap();
        b.set_coeff(3, 3, q(56)).unwrap();
        assert!(matches!(
            b.set_coeff(3, 3, q(57)),
            Err(Error::Consistency(_))
        ));
        assert!(matches!(
            b.set_coeff(10, 1, q(1)),
            Err(Error::Truncation { .. })
        ));
        assert!(b.set_key(OrbitKey::new(-3, 0), q(1)).is_err());
        assert!(b.set_key(OrbitKey::new(1, 1), q(1)).is_err());
    }

    #[test]
    fn linear_structure() {
        let phi = sample();
        let zero = JacobiExpansion::zero(*phi.signature(), 20);
        assert_eq!(phi.add(&zero).unwrap(), phi);
        assert!(phi.scale(&ExactRational::zero()).is_zero());
        assert!(phi.add(&phi.scale(&q(-1))).unwrap().is_zero());
        let other = JacobiExpansion::zero(sig(4, 2, 1), 20);
        assert!(matches!(phi.add(&other), Err(Error::SignatureMismatch(_))));
        let short = JacobiExpansion::zero(*phi.signature(), 5);
        assert_eq!(phi.add(&short).unwrap().bound(), 5);
    }

    #[test]
    fn valuations() {
        let phi = sample();
        assert_eq!(
            JacobiExpansion::zero(*phi.signature(), 10)
                .nu_ell_form(7)
                .unwrap(),
            LAdicValuation::Infinity
        );
        let mut b = ExpansionBuilder::new(sig(4, 1, 1), 10);
        b.set_coeff(1, 1, q(56)).unwrap();
        assert_eq!(b.seal().nu_ell_form(7).unwrap(), LAdicValuation::Finite(1));
    }

    #[test]
    fn level_lift_is_the_same_form() {
        let phi = sample();
        let lifted = phi.with_level(3).unwrap();
        assert_eq!(lifted.level(), 3);
        for n in 0..5 {
            for r in -4..=4 {
                if r * r - 4 * n >= -20 {
                    assert_eq!(lifted.coeff(n, r).unwrap(), phi.coeff(n, r).unwrap());
                }
            }
        }
        assert!(phi.same_form(&lifted).unwrap());
        lifted.audit().unwrap();
    }

    #[test]
    fn key_enumeration_counts() {
        // m = 1, N = 1: one key per discriminant = 0, 1 mod 4
        let keys: Vec<_> = valid_keys(&sig(4, 1, 1), 8).collect();
        let discs: Vec<i64> = keys.iter().map(|k| k.disc).collect();
        assert_eq!(discs, vec![0, -3, -4, -7, -8]);
    }

    fn random_expansion(m: i64, n: i64, bound: u64, seed: Vec<i64>) -> JacobiExpansion {
        let s = sig(4, m, n);
        let mut b = ExpansionBuilder::new(s, bound);
        for (key, v) in valid_keys(&s, bound).zip(seed.iter().cycle()) {
            b.set_key(key, q(*v)).unwrap();
        }
        b.seal()
    }

    proptest! {
        #[test]
        fn orbit_well_defined(m in 1i64..=5, lvl in 1i64..=5, n in 0i64..6, r in -12i64..12, lambda in -3i64..=3,
                              seed in prop::collection::vec(-9i64..10, 1..30)) {
            let bound = 40;
            let phi = random_expansion(m, lvl, bound, seed);
            let d = r * r - 4 * m * n;
            prop_assume!(d >= -(bound as i64));
            let n2 = n + r * lvl * lambda + m * lvl * lvl * lambda * lambda;
            let r2 = r + 2 * m * lvl * lambda;
            prop_assert_eq!(phi.coeff(n2, r2).unwrap(), phi.coeff(n, r).unwrap());
            phi.audit().unwrap();
        }

        #[test]
        fn valuation_of_sum(seed1 in prop::collection::vec(-50i64..50, 1..20), seed2 in prop::collection::vec(-50i64..50, 1..20)) {
            let a = random_expansion(2, 1, 20, seed1);
            let b = random_expansion(2, 1, 20, seed2);
            let s = a.add(&b).unwrap();
            for ell in [2u64, 3, 5] {
                prop_assert!(s.nu_ell_form(ell).unwrap() >= a.nu_ell_form(ell).unwrap().min(b.nu_ell_form(ell).unwrap()));
            }
        }
    }
}
