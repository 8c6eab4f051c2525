//! Coefficient-level operators on truncated Jacobi expansions.
//!
//! Every operator consumes a sealed expansion and returns a new one whose
//! bound records exactly the range on which the output is certified.

mod eigen;
mod hecke;
mod index;
mod twist;

pub use eigen::{detect_eigenvalue, Eigenvalue, HeckeEigenReport};
pub use hecke::{hecke_case_factor, hecke_tp, hecke_tp_naive};
pub use index::{u_d, v_m};
pub use twist::{project_bp, twist};
