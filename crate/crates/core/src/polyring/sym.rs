//! Polynomials in a fixed number of indeterminates as ring elements, for
//! symbolic determinants.

use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use super::BaryPoly;
use crate::scalar::{Rational, Ring};

/// A rational polynomial in `M` indeterminates.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly<const M: usize>(pub BaryPoly<Rational>);

impl<const M: usize> SymPoly<M> {
    /// The indeterminate with index `i`.
    pub fn var(i: usize) -> Self {
        SymPoly(BaryPoly::var(M, i))
    }

    pub fn constant(c: Rational) -> Self {
        SymPoly(BaryPoly::constant(M, c))
    }

    pub fn poly(&self) -> &BaryPoly<Rational> {
        &self.0
    }
}

impl<const M: usize> Add for SymPoly<M> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        SymPoly(&self.0 + &rhs.0)
    }
}

impl<const M: usize> Sub for SymPoly<M> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        SymPoly(&self.0 - &rhs.0)
    }
}

impl<const M: usize> Mul for SymPoly<M> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        SymPoly(&self.0 * &rhs.0)
    }
}

impl<const M: usize> Neg for SymPoly<M> {
    type Output = Self;
    fn neg(self) -> Self {
        SymPoly(-self.0)
    }
}

impl<'a, const M: usize> AddAssign<&'a SymPoly<M>> for SymPoly<M> {
    fn add_assign(&mut self, rhs: &'a SymPoly<M>) {
        self.0 = &self.0 + &rhs.0;
    }
}

impl<'a, const M: usize> SubAssign<&'a SymPoly<M>> for SymPoly<M> {
    fn sub_assign(&mut self, rhs: &'a SymPoly<M>) {
        self.0 = &self.0 - &rhs.0;
    }
}

impl<'a, const M: usize> MulAssign<&'a SymPoly<M>> for SymPoly<M> {
    fn mul_assign(&mut self, rhs: &'a SymPoly<M>) {
        self.0 = &self.0 * &rhs.0;
    }
}

impl<const M: usize> Ring for SymPoly<M> {
    fn zero() -> Self {
        SymPoly(BaryPoly::zero(M))
    }
    fn one() -> Self {
        SymPoly(BaryPoly::one(M))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
}
