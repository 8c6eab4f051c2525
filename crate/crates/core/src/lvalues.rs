//! Special values of quadratic Dirichlet L-series at non-positive integers.
//!
//! Everything goes through generalized Bernoulli numbers:
//! `L(1 - n, chi) = -B_{n,chi} / n` and `zeta(1 - 2n) = -B_{2n} / (2n)`.
//! For a non-fundamental `D = f^2 D0` the value `L_D(s)` is `L_{D0}(s)`
//! times a finite Moebius/divisor-sum correction.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactarith::{
    bernoulli_table, divisors, fundamental_decompose, is_discriminant, is_fundamental, kronecker,
    moebius, sigma_power, ExactRational,
};

/// Real character `chi_D = (D / .)` for a discriminant `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct QuadCharacter {
    discriminant: i64,
}

impl QuadCharacter {
    pub fn new(discriminant: i64) -> Result<Self> {
        if !is_discriminant(discriminant) {
            return Err(Error::arg(format!(
                "character discriminant {discriminant} is not = 0, 1 mod 4 and nonzero"
            )));
        }
        Ok(QuadCharacter { discriminant })
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn modulus(&self) -> u64 {
        self.discriminant.unsigned_abs()
    }

    pub fn eval(&self, n: i64) -> i8 {
        kronecker(self.discriminant, n)
    }

    /// `chi(-1)`, equal to the sign of the discriminant.
    pub fn parity(&self) -> i8 {
        self.eval(-1)
    }
}

impl TryFrom<i64> for QuadCharacter {
    type Error = Error;
    fn try_from(d: i64) -> Result<Self> {
        QuadCharacter::new(d)
    }
}

impl From<QuadCharacter> for i64 {
    fn from(c: QuadCharacter) -> i64 {
        c.discriminant
    }
}

/// `S_i = sum_{a=1}^{f} chi(a) a^i` for `i = 0..=n`.
fn character_power_sums(chi: &QuadCharacter, n: usize) -> Vec<BigInt> {
    let f = chi.modulus();
    let values: Vec<(u64, i8)> = (1..=f)
        .map(|a| (a, chi.eval(a as i64)))
        .filter(|&(_, c)| c != 0)
        .collect();
    // a^i * f stays below 2^126 on the fast path
    if ((n + 1) as f64) * (f as f64).log2() < 125.0 {
        let mut sums = vec![0i128; n + 1];
        for &(a, c) in &values {
            let mut pw: i128 = 1;
            for s in sums.iter_mut() {
                *s += c as i128 * pw;
                pw *= a as i128;
            }
        }
        sums.into_iter().map(BigInt::from).collect()
    } else {
        let mut sums = vec![BigInt::zero(); n + 1];
        for &(a, c) in &values {
            let mut pw = BigInt::from(1);
            for s in sums.iter_mut() {
                if c > 0 {
                    *s += &pw;
                } else {
                    *s -= &pw;
                }
                pw *= a;
            }
        }
        sums
    }
}

/// Generalized Bernoulli number `B_{n,chi}` for the character of period `f = |D|`:
/// `f^{n-1} sum_{a=1}^{f} chi(a) B_n(a/f)`, expanded through the Bernoulli
/// polynomial into integer power sums.
pub fn gen_bernoulli(n: usize, chi: &QuadCharacter) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::arg("gen_bernoulli: n must be >= 1"));
    }
    let f = chi.modulus() as i64;
    let bern = bernoulli_table(n);
    let sums = character_power_sums(chi, n);
    let mut binom = BigInt::from(1);
    let mut acc = ExactRational::zero();
    for (j, b) in bern.iter().enumerate() {
        if !b.is_zero() && !sums[n - j].is_zero() {
            let term = ExactRational::from_bigint(&binom * &sums[n - j])
                * b
                * ExactRational::int_pow(f, j as i32 - 1);
            acc += term;
        }
        binom = binom * BigInt::from((n - j) as u64) / BigInt::from((j + 1) as u64);
    }
    Ok(acc)
}

/// `zeta(s)` for `s = 1 - 2n`, `n >= 1`.
pub fn zeta_negative(s: i64) -> Result<ExactRational> {
    if s > -1 || s % 2 == 0 {
        return Err(Error::arg(format!(
            "zeta_negative: {s} is not a negative odd integer"
        )));
    }
    let two_n = (1 - s) as usize;
    let b = bernoulli_table(two_n).pop().expect("nonempty");
    Ok(-b * ExactRational::new(1, two_n as i64)?)
}

fn weight_from_s(s: i64) -> Result<i64> {
    let k = 2 - s;
    if k < 2 {
        return Err(Error::arg(format!("L-value argument s = {s} must be <= 0")));
    }
    Ok(k)
}

/// `L_{D0}(2 - k) = -B_{k-1,chi_{D0}} / (k - 1)` for fundamental `D0 < 0`.
pub fn l_value_fundamental(d0: i64, s: i64) -> Result<ExactRational> {
    if d0 >= 0 || !is_fundamental(d0) {
        return Err(Error::arg(format!(
            "{d0} is not a negative fundamental discriminant"
        )));
    }
    let k = weight_from_s(s)?;
    let chi = QuadCharacter::new(d0)?;
    let b = gen_bernoulli((k - 1) as usize, &chi)?;
    Ok(-b * ExactRational::new(1, k - 1)?)
}

/// The integer `sum_{d | f} mu(d) (D0/d) d^{-s} sigma_{1-2s}(f/d)` for `s <= 0`.
pub fn imprimitive_correction(d0: i64, f: u64, s: i64) -> Result<BigInt> {
    let k = weight_from_s(s)?;
    let sigma_exp = (2 * k - 3) as u32;
    let mut acc = BigInt::zero();
    for d in divisors(f) {
        let mu = moebius(d) as i64 * kronecker(d0, d as i64) as i64;
        if mu == 0 {
            continue;
        }
        let term =
            num_traits::pow(BigInt::from(d), (k - 2) as usize) * sigma_power(sigma_exp, f / d);
        if mu > 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `L_D(s)` for any negative discriminant `D = f^2 D0`.
pub fn l_value(d: i64, s: i64) -> Result<ExactRational> {
    let (d0, f) = fundamental_decompose(d)?;
    let base = l_value_fundamental(d0, s)?;
    if f == 1 {
        return Ok(base);
    }
    Ok(base * ExactRational::from_bigint(imprimitive_correction(d0, f, s)?))
}
