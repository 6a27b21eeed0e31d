//! Sparse polynomials in barycentric variables and the substitution /
//! degree-elevation operations used by the positivity certificates.

mod bary;
mod multiindex;
mod sym;
pub mod univariate;

pub use bary::{BaryPoly, CoefficientSign};
pub use multiindex::MultiIndex;
pub use sym::SymPoly;
pub use univariate::Upoly;
