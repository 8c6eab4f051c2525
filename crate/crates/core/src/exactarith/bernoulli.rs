use num_bigint::BigInt;

use super::ExactRational;

/// `B_0, ..., B_n` from `sum_{j<=m} C(m+1, j) B_j = 0`, so `B_1 = -1/2`.
pub fn bernoulli_table(n: usize) -> Vec<ExactRational> {
    let mut table = Vec::with_capacity(n + 1);
    table.push(ExactRational::one());
    for m in 1..=n {
        // binomials C(m+1, j) built incrementally along the row
        let mut binom = BigInt::from(1);
        let mut acc = ExactRational::zero();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += ExactRational::from_bigint(binom.clone()) * b;
            }
            binom = binom * BigInt::from((m + 1 - j) as u64) / BigInt::from((j + 1) as u64);
        }
        let b_m = -acc * ExactRational::new(1, (m + 1) as i64).expect("nonzero");
        table.push(b_m);
    }
    table
}

/// The `n`-th Bernoulli number with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> ExactRational {
    if n > 1 && n % 2 == 1 {
        return ExactRational::zero();
    }
    bernoulli_table(n).pop().expect("table is never empty")
}
