//! Scalar domains: exact rationals, the quadratic tower Q(√5, √21), and
//! outward-rounded binary intervals.
//!
//! Every coefficient domain used by [`crate::polyring::BaryPoly`] implements
//! [`Ring`]; the ones that admit division implement [`Field`].

mod algebraic;
mod interval;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use algebraic::AlgebraicScalar;
pub use interval::{Dyadic, Interval, DEFAULT_PRECISION};

use crate::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Commutative ring with unit. Arithmetic is by value; the `*Assign<&Self>`
/// forms avoid clones in accumulation loops.
pub trait Ring:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Structural zero test; never numeric.
    fn is_zero(&self) -> bool;
    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out *= rhs;
        out
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out += rhs;
        out
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out -= rhs;
        out
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// Integral domain with exact division, the requirement of fraction-free
/// elimination.
pub trait Domain: Ring {
    /// `self / rhs` when the quotient exists in the domain.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

/// Field (or interval/float stand-in for one).
pub trait Field: Ring {
    fn inv(&self) -> Result<Self>;

    /// Pivot quality for elimination. Zero means the value cannot be used as
    /// a pivot (exact zero, or an interval containing zero).
    fn pivot_score(&self) -> f64;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul_ref(&rhs.inv()?))
    }
}

impl<F: Field> Domain for F {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div(rhs).ok()
    }
}

/// Sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Domains whose elements are real numbers with a decidable (exact) or
/// possibly undetermined (interval) sign.
pub trait RealScalar: Ring {
    /// `None` when the sign cannot be decided (interval straddling zero).
    fn sign(&self) -> Option<Sign>;
    /// Nearest double, for reporting and numeric evaluation.
    fn to_f64(&self) -> f64;
    /// Human readable rendering; exact domains render exactly.
    fn render(&self) -> String;
    /// Outward enclosure with `prec` bits of working precision.
    fn to_interval(&self, prec: u32) -> Interval;
    /// Canonical exact rendering, for exact domains only.
    fn exact_string(&self) -> Option<String> {
        None
    }
}

/// Coefficient domains usable end to end: elimination plus sign decisions.
pub trait Scalar: Field + RealScalar {}

impl<T: Field + RealScalar> Scalar for T {}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Field for Rational {
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn pivot_score(&self) -> f64 {
        if Zero::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
}

impl RealScalar for Rational {
    fn sign(&self) -> Option<Sign> {
        Some(if Zero::is_zero(self) {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        })
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn render(&self) -> String {
        render_rational(self)
    }
    fn to_interval(&self, prec: u32) -> Interval {
        Interval::from_rational_prec(self, prec)
    }
    fn exact_string(&self) -> Option<String> {
        Some(render_rational(self))
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
}

impl Field for f64 {
    fn inv(&self) -> Result<Self> {
        if *self == 0.0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(1.0 / self)
        }
    }
    fn pivot_score(&self) -> f64 {
        self.abs()
    }
}

impl RealScalar for f64 {
    fn sign(&self) -> Option<Sign> {
        if self.is_nan() {
            None
        } else if *self > 0.0 {
            Some(Sign::Positive)
        } else if *self < 0.0 {
            Some(Sign::Negative)
        } else {
            Some(Sign::Zero)
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn render(&self) -> String {
        format!("{self:e}")
    }
    fn to_interval(&self, prec: u32) -> Interval {
        Interval::from_f64(*self, prec)
    }
}

/// `p/q` or `p` for integers.
pub fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Correctly handles numerators and denominators far outside the f64 range.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    Interval::from_rational_prec(q, 64).mid_f64()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_render_and_parse() {
        let q = rat(-6, 4);
        assert_eq!(render_rational(&q), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), q);
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(rat(2, 3).pow(5), rat(32, 243));
        assert_eq!(rat(2, 3).pow(0), int(1));
    }

    #[test]
    fn huge_rational_to_f64() {
        let big = BigInt::from(10).pow(400u32);
        let q = Rational::new(big.clone() * 3, big);
        assert!((rational_to_f64(&q) - 3.0).abs() < 1e-15);
    }
}
