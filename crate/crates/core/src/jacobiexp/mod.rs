//! Truncated Fourier expansions of Jacobi forms.
//!
//! A form of index `m` on `Gamma_0(N^2) x| (NZ x Z)` satisfies
//! `c(n, r) = c(n + rN lambda + mN^2 lambda^2, r + 2mN lambda)`, so its
//! coefficient at `(n, r)` depends only on `D = r^2 - 4mn` and
//! `r mod 2mN`. Expansions are stored in exactly those coordinates.

mod expansion;
mod serial;
mod signature;

pub use expansion::{valid_keys, ExpansionBuilder, JacobiExpansion, OrbitKey};
pub use serial::{ExpansionDoc, SignatureDoc};
pub use signature::FormSignature;
