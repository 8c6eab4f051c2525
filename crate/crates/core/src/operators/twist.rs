use crate::error::{Error, Result};
use crate::exactarith::{is_prime, kronecker, ExactRational};
use crate::jacobiexp::JacobiExpansion;

/// Keeps the coefficients with `p | D`; the image lives at level `N p`.
pub fn project_bp(phi: &JacobiExpansion, p: i64) -> Result<JacobiExpansion> {
    if p < 1 {
        return Err(Error::arg(format!("B_p needs p >= 1, got {p}")));
    }
    let kept = phi.map_entries(|key, v| {
        if key.disc % p == 0 {
            v.clone()
        } else {
            ExactRational::zero()
        }
    });
    kept.with_level(phi.level() * p)
}

/// Quadratic twist by `psi = (. / p)`: the coefficient at discriminant `D`
/// is multiplied by `(D / p)`. Level becomes `N p`, character unchanged
/// since `psi^2` is trivial.
pub fn twist(phi: &JacobiExpansion, p: i64) -> Result<JacobiExpansion> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::arg(format!("twist needs an odd prime, got {p}")));
    }
    // p may already divide the level (iterated twists); it must not divide the index.
    if phi.index() % p == 0 {
        return Err(Error::arg(format!(
            "twist needs p = {p} coprime to the index {}",
            phi.index()
        )));
    }
    let twisted =
        phi.map_entries(|key, v| v * ExactRational::from_int(kronecker(key.disc, p) as i64));
    twisted.with_level(phi.level() * p)
}
