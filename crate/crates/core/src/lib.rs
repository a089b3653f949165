//! Lagrangian surfaces in complex Euclidean plane built from a pair of
//! Legendre curves, one in the unit 3-sphere and one in anti de Sitter
//! 3-space.
//!
//! Given a unit-speed Legendre curve `γ(s)` in `S³` and `α(t)` in `H³₁`, the
//! map
//!
//! ```text
//! φ(t, s) = (α₁(t) γ₁(s), α₂(t) γ₂(s))
//! ```
//!
//! is a conformal Lagrangian immersion. Its Lagrangian angle is the sum of the
//! Legendre angles of the two curves plus π, and its mean curvature vector is
//! `H = e^{-2u}/2 (k_α Jφ_t + k_γ Jφ_s)`. Minimal, parallel-H, constant mean
//! curvature, Hamiltonian-minimal and Willmore members of the family are all
//! characterized by the curvature functions of the generating curves.
//!
//! The crate is `no_std` (it needs `alloc`). Layout:
//!
//! * [`geometry`]: the Hermitian product, Kähler form and complex structure of C².
//! * [`elliptic`]: Jacobi elliptic functions and the complete elliptic integral.
//! * [`curve`]: Legendre curves: explicit families, RK4 integration from a
//!   curvature profile, Legendre angle, Hopf projection and horizontal lift.
//! * [`surface`]: assembly of `φ` and every analytic surface quantity, plus
//!   classification and the Willmore functional.
//! * [`oracle`]: finite-difference re-derivation of surface quantities from
//!   raw position samples, used to cross-check the analytic formulas.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod curve;
pub mod elliptic;
mod error;
pub mod geometry;
pub mod numeric;
pub mod oracle;
pub mod surface;

pub use error::{Error, Result};
pub use geometry::{AmbientQuadric, Complex, ComplexPair};

/// Absolute tolerance for identities that hold algebraically (round-off only).
pub const EPS_ALG: f64 = 1e-10;

/// Absolute tolerance for quantities produced by integration or quadrature.
pub const EPS_ODE: f64 = 1e-6;

/// Drift beyond this many multiples of [`EPS_ODE`] is treated as a failure.
pub const DRIFT_FACTOR: f64 = 100.0;
