use num_integer::Integer;

use super::LocalConditions;
use crate::exactarith::is_fundamental;

/// Streams `(D, rho)` for fundamental `D` with `lo <= |D| <= hi`,
/// `gcd(D, mN) = 1`, `rho^2 = D mod 4m` (`rho mod 2m`, each solution
/// separately) and every local condition satisfied. Order is `|D|` then `rho`.
#[derive(Clone, Debug)]
pub struct FundamentalEnumerator {
    next_abs: u64,
    hi: u64,
    m: i64,
    level: i64,
    conditions: LocalConditions,
    pending: std::vec::IntoIter<(i64, i64)>,
}

impl FundamentalEnumerator {
    pub fn range(lo: u64, hi: u64, m: i64, level: i64, conditions: LocalConditions) -> Self {
        FundamentalEnumerator {
            next_abs: lo.max(1),
            hi,
            m,
            level,
            conditions,
            pending: Vec::new().into_iter(),
        }
    }

    fn candidates(&self, disc: i64) -> Vec<(i64, i64)> {
        if !is_fundamental(disc)
            || disc.gcd(&(self.m * self.level)) != 1
            || !self.conditions.holds(disc)
        {
            return Vec::new();
        }
        let four_m = 4 * self.m;
        (0..2 * self.m)
            .filter(|rho| (rho * rho - disc).rem_euclid(four_m) == 0)
            .map(|rho| (disc, rho))
            .collect()
    }
}

impl Iterator for FundamentalEnumerator {
    type Item = (i64, i64);

    fn next(&mut self) -> Option<(i64, i64)> {
        loop {
            if let Some(item) = self.pending.next() {
                return Some(item);
            }
            if self.next_abs > self.hi {
                return None;
            }
            let disc = -(self.next_abs as i64);
            self.next_abs += 1;
            self.pending = self.candidates(disc).into_iter();
        }
    }
}

pub fn enumerate_fundamentals(
    bound: u64,
    m: i64,
    level: i64,
    conditions: &LocalConditions,
) -> FundamentalEnumerator {
    FundamentalEnumerator::range(1, bound, m, level, conditions.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indivisibility::LocalCondition;

    #[test]
    fn index_one_examples() {
        let all: Vec<i64> = enumerate_fundamentals(20, 1, 1, &LocalConditions::none())
            .map(|(d, _)| d)
            .collect();
        assert_eq!(all, vec![-3, -4, -7, -8, -11, -15, -19, -20]);
        let cond = LocalConditions::new(vec![LocalCondition { p: 5, eps: 1 }]).unwrap();
        let sub: Vec<i64> = enumerate_fundamentals(20, 1, 1, &cond)
            .map(|(d, _)| d)
            .collect();
        assert_eq!(sub, vec![-4, -11, -19]);
        let rhos: Vec<i64> = enumerate_fundamentals(8, 1, 1, &LocalConditions::none())
            .map(|(_, r)| r)
            .collect();
        assert_eq!(rhos, vec![1, 0, 1, 0]);
    }

    #[test]
    fn coprimality_and_square_classes() {
        for (d, rho) in enumerate_fundamentals(500, 5, 1, &LocalConditions::none()) {
            assert_ne!(d % 5, 0);
            assert_eq!((rho * rho - d).rem_euclid(20), 0);
        }
        // m = 2: D must be odd and D = rho^2 mod 8 (so D = 1 mod 8), two roots rho
        let m2: Vec<(i64, i64)> =
            enumerate_fundamentals(40, 2, 1, &LocalConditions::none()).collect();
        assert_eq!(
            m2,
            vec![
                (-7, 1),
                (-7, 3),
                (-15, 1),
                (-15, 3),
                (-23, 1),
                (-23, 3),
                (-31, 1),
                (-31, 3),
                (-39, 1),
                (-39, 3)
            ]
        );
    }

    #[test]
    fn ranges_partition_the_stream() {
        let whole: Vec<_> = enumerate_fundamentals(300, 3, 2, &LocalConditions::none()).collect();
        let mut parts = Vec::new();
        for lo in (1..=300).step_by(70) {
            parts.extend(FundamentalEnumerator::range(
                lo,
                (lo + 69).min(300),
                3,
                2,
                LocalConditions::none(),
            ));
        }
        assert_eq!(whole, parts);
    }
}
