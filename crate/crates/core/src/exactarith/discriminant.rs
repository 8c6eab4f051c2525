use super::primes::factorize;
use crate::error::{Error, Result};

/// `D != 0` with `D = 0, 1 mod 4`.
pub fn is_discriminant(d: i64) -> bool {
    d != 0 && matches!(d.rem_euclid(4), 0 | 1)
}

fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Squarefree `D = 1 mod 4`, or `D = 4d` with `d` squarefree and `d = 2, 3 mod 4`.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let q = d / 4;
            matches!(q.rem_euclid(4), 2 | 3) && is_squarefree(q.unsigned_abs())
        }
        _ => false,
    }
}

/// Writes a negative discriminant as `D = f^2 * D0` with `D0` fundamental.
pub fn fundamental_decompose(d: i64) -> Result<(i64, u64)> {
    if d >= 0 || !is_discriminant(d) {
        return Err(Error::arg(format!("{d} is not a negative discriminant")));
    }
    let mut core: i64 = -1;
    let mut f: u64 = 1;
    for (p, e) in factorize(d.unsigned_abs()) {
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p as i64;
        }
    }
    // `core` is the squarefree kernel with sign; fix up the 2-part.
    if core.rem_euclid(4) != 1 {
        debug_assert!(
            f.is_multiple_of(2),
            "D = 0,1 mod 4 forces an even square cofactor"
        );
        core *= 4;
        f /= 2;
    }
    Ok((core, f))
}
