//! Exact Fourier-coefficient calculus for Jacobi forms.
//!
//! Coefficients live in [`ExactRational`]; a form is a [`JacobiExpansion`]
//! truncated at `|D| <= bound` and keyed by orbit-reduced pairs `(D, rho)`.
//! On top of that sit the coefficient-level operators (`T_p`, `U_d`, `V_m`,
//! `B_p`, quadratic twists), the index-one Eisenstein series built from
//! special values of quadratic L-series, the theta decomposition, and a
//! scanner that searches fundamental discriminants for coefficients of
//! `ell`-adic valuation zero.

pub mod eisenstein;
pub mod error;
pub mod exactarith;
pub mod indivisibility;
pub mod jacobiexp;
pub mod lvalues;
pub mod operators;
pub mod theta;

pub use error::{Error, Result};
pub use exactarith::{ExactRational, LAdicValuation};
pub use jacobiexp::{ExpansionBuilder, FormSignature, JacobiExpansion, OrbitKey};
pub use lvalues::QuadCharacter;
