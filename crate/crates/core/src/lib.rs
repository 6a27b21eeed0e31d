//! Exact and numerical machinery for candidate Fekete / Fejér point sets on the
//! d-dimensional simplex.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] exact rationals, the field Q(√5, √21) and outward-rounded intervals,
//! * [`polyring`] sparse homogeneous polynomials in barycentric variables,
//! * [`pointsets`] the face-by-face construction of the sets F₁ … F₅,
//! * [`interp`] Vandermonde determinants, Lagrange bases and design checks,
//! * [`certify`] degree-elevation positivity certificates for Σℓ² ≤ 1,
//! * [`schur`] Schur polynomials and the degree-two symmetric-function identities,
//! * [`search`] numerical maxima, Fejér exponents and the degree-5 parameters.

pub mod certify;
pub mod error;
pub mod interp;
pub mod linalg;
pub mod pointsets;
pub mod polyring;
pub mod schur;
pub mod scalar;
pub mod search;

pub use error::{Error, Result};
pub use scalar::{AlgebraicScalar, Interval, Rational};
