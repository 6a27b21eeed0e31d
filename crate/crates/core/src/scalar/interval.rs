//! Outward-rounded intervals with arbitrary-precision binary endpoints.
//!
//! Endpoints are dyadic rationals `mant · 2^exp`. Every operation computes the
//! exact dyadic result (or a directed quotient/root) and then rounds the lower
//! endpoint toward −∞ and the upper endpoint toward +∞ to the working
//! precision, so the true real result is always enclosed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Field, Rational, RealScalar, Ring, Sign};
use crate::{Error, Result};

/// Working precision used when none is given explicitly.
pub const DEFAULT_PRECISION: u32 = 128;

const MIN_PRECISION: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    Down,
    Up,
}

/// Exact binary rational `mant · 2^exp`, normalised so that `mant` is odd
/// (or zero with `exp == 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite value {x}");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz as usize;
                self.exp += tz as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        Dyadic::new(a + b, e)
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    fn round(&self, prec: u32, dir: Dir) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = (bits - prec as u64) as usize;
        let divisor = BigInt::one() << shift;
        let q = match dir {
            Dir::Down => self.mant.div_floor(&divisor),
            Dir::Up => -((-&self.mant).div_floor(&divisor)),
        };
        Dyadic::new(q, self.exp + shift as i64)
    }

    /// Directed quotient `self / other` with at least `prec` significant bits.
    fn div(&self, other: &Self, prec: u32, dir: Dir) -> Self {
        debug_assert!(!other.is_zero());
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64;
        let k = want.max(0);
        let num = &self.mant << k as usize;
        let q = match dir {
            Dir::Down => num.div_floor(&other.mant),
            Dir::Up => -((-num).div_floor(&other.mant)),
        };
        Dyadic::new(q, self.exp - other.exp - k).round(prec, dir)
    }

    /// Directed square root of a nonnegative value.
    fn sqrt(&self, prec: u32, dir: Dir) -> Self {
        debug_assert!(!self.is_negative());
        if self.is_zero() {
            return Dyadic::zero();
        }
        let target = 2 * prec as i64 + 4;
        let mut k = (target - self.mant.bits() as i64).max(0);
        if (self.exp - k).rem_euclid(2) != 0 {
            k += 1;
        }
        let scaled = &self.mant << k as usize;
        let mut root = scaled.sqrt();
        if dir == Dir::Up && &root * &root != scaled {
            root += 1;
        }
        Dyadic::new(root, (self.exp - k) / 2).round(prec, dir)
    }

    /// Directed conversion of a rational.
    fn from_rational(q: &Rational, prec: u32, dir: Dir) -> Self {
        Dyadic::new(q.numer().clone(), 0).div(&Dyadic::new(q.denom().clone(), 0), prec, dir)
    }

    /// Exact conversion to a rational.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(64, Dir::Down);
        let m = r.mant.to_f64().unwrap_or(f64::NAN);
        let e = r.exp.clamp(-2200, 2200) as i32;
        // split the scaling to stay clear of intermediate overflow/underflow
        m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub(other).mant.sign() {
            BigSign::Minus => Ordering::Less,
            BigSign::NoSign => Ordering::Equal,
            BigSign::Plus => Ordering::Greater,
        }
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints and a working precision
/// (bits of mantissa kept after each rounded operation).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "inverted interval");
        Interval { lo, hi, prec: prec.max(MIN_PRECISION) }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        Interval::new(x.clone(), x, prec)
    }

    pub fn from_int_prec(n: i64, prec: u32) -> Self {
        Interval::point(Dyadic::from_int(n), prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        Interval::point(Dyadic::from_f64(x), prec)
    }

    /// Tightest enclosure of `q` at `prec` bits.
    pub fn from_rational_prec(q: &Rational, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        Interval {
            lo: Dyadic::from_rational(q, prec, Dir::Down),
            hi: Dyadic::from_rational(q, prec, Dir::Up),
            prec,
        }
    }

    /// Interval with rational endpoints rounded outward.
    pub fn from_rational_bounds(lo: &Rational, hi: &Rational, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        Interval::new(
            Dyadic::from_rational(lo, prec, Dir::Down),
            Dyadic::from_rational(hi, prec, Dir::Up),
            prec,
        )
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Same enclosure, different working precision for subsequent operations.
    pub fn with_precision(mut self, prec: u32) -> Self {
        self.prec = prec.max(MIN_PRECISION);
        self
    }

    /// Outward re-rounding to `prec` bits.
    pub fn round_to(&self, prec: u32) -> Interval {
        let prec = prec.max(MIN_PRECISION);
        Interval { lo: self.lo.round(prec, Dir::Down), hi: self.hi.round(prec, Dir::Up), prec }
    }

    fn join_prec(&self, other: &Self) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn width(&self) -> f64 {
        self.hi.sub(&self.lo).to_f64()
    }

    pub fn mid_f64(&self) -> f64 {
        self.lo.add(&self.hi).mul(&Dyadic::new(BigInt::one(), -1)).to_f64()
    }

    pub fn mid_rational(&self) -> Rational {
        (self.lo.to_rational() + self.hi.to_rational()) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        let d = Dyadic::from_f64(x);
        self.lo <= d && d <= self.hi
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// True when `other` lies inside `self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn certainly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn certainly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// `self < other` for every pair of enclosed values.
    pub fn certainly_less(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    /// Smallest absolute value in the interval.
    pub fn mignitude(&self) -> f64 {
        if self.contains_zero() {
            0.0
        } else if self.lo.is_positive() {
            self.lo.to_f64()
        } else {
            -self.hi.to_f64()
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            let m = self.lo.abs().max(self.hi.clone());
            Interval { lo: Dyadic::zero(), hi: m, prec: self.prec }
        } else if self.hi.is_negative() || self.hi.is_zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn sqrt(&self) -> Result<Interval> {
        if self.hi.is_negative() {
            return Err(Error::Invalid("square root of a negative interval".into()));
        }
        let lo = if self.lo.is_negative() { Dyadic::zero() } else { self.lo.sqrt(self.prec, Dir::Down) };
        Ok(Interval { lo, hi: self.hi.sqrt(self.prec, Dir::Up), prec: self.prec })
    }

    pub fn checked_div(&self, other: &Interval) -> Result<Interval> {
        if other.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let prec = self.join_prec(other);
        let cands = [(&self.lo, &other.lo), (&self.lo, &other.hi), (&self.hi, &other.lo), (&self.hi, &other.hi)];
        let lo = cands.iter().map(|(a, b)| a.div(b, prec, Dir::Down)).min().unwrap();
        let hi = cands.iter().map(|(a, b)| a.div(b, prec, Dir::Up)).max().unwrap();
        Ok(Interval { lo, hi, prec })
    }

    /// Hull of two intervals.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.join_prec(other),
        }
    }

    /// Decimal rendering `[lo, hi]` with 20 significant digits.
    pub fn render_decimal(&self) -> String {
        format!("[{}, {}]", decimal(&self.lo, 20, Dir::Down), decimal(&self.hi, 20, Dir::Up))
    }

    /// Midpoint rendered with `digits` significant decimal digits.
    pub fn render_mid(&self, digits: usize) -> String {
        let mid = Dyadic::new(self.lo.add(&self.hi).mant, self.lo.add(&self.hi).exp - 1);
        decimal(&mid, digits, Dir::Down)
    }
}

/// Scientific-notation rendering of a dyadic, truncated in the given direction.
fn decimal(x: &Dyadic, digits: usize, dir: Dir) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let q = x.to_rational();
    let neg = q.is_negative();
    let a = q.abs();
    // estimate decimal exponent
    let mut e10 = (a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2;
    e10 = e10.floor();
    let mut e = e10 as i64;
    let ten = BigInt::from(10);
    let scaled = |e: i64| -> Rational {
        let shift = digits as i64 - 1 - e;
        if shift >= 0 {
            &a * Rational::from_integer(ten.pow(shift as u32))
        } else {
            &a / Rational::from_integer(ten.pow((-shift) as u32))
        }
    };
    let lower = Rational::from_integer(ten.pow(digits as u32 - 1));
    let upper = Rational::from_integer(ten.pow(digits as u32));
    let mut s = scaled(e);
    while s >= upper {
        e += 1;
        s = scaled(e);
    }
    while s < lower {
        e -= 1;
        s = scaled(e);
    }
    // magnitude rounding: toward zero for lower bound of positives etc.
    let toward_zero = (dir == Dir::Down) != neg;
    let m = if toward_zero { s.floor() } else { s.ceil() }.to_integer();
    let ds = m.to_string();
    let (head, tail) = ds.split_at(1);
    format!("{}{}.{}e{}", if neg { "-" } else { "" }, head, tail, e)
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_decimal())
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(mut self, rhs: Interval) -> Interval {
        self += &rhs;
        self
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(mut self, rhs: Interval) -> Interval {
        self -= &rhs;
        self
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(mut self, rhs: Interval) -> Interval {
        self *= &rhs;
        self
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }
}

impl<'a> AddAssign<&'a Interval> for Interval {
    fn add_assign(&mut self, rhs: &'a Interval) {
        let prec = self.join_prec(rhs);
        self.lo = self.lo.add(&rhs.lo).round(prec, Dir::Down);
        self.hi = self.hi.add(&rhs.hi).round(prec, Dir::Up);
        self.prec = prec;
    }
}

impl<'a> SubAssign<&'a Interval> for Interval {
    fn sub_assign(&mut self, rhs: &'a Interval) {
        let prec = self.join_prec(rhs);
        let lo = self.lo.sub(&rhs.hi).round(prec, Dir::Down);
        let hi = self.hi.sub(&rhs.lo).round(prec, Dir::Up);
        *self = Interval { lo, hi, prec };
    }
}

impl<'a> MulAssign<&'a Interval> for Interval {
    fn mul_assign(&mut self, rhs: &'a Interval) {
        let prec = self.join_prec(rhs);
        let p = [self.lo.mul(&rhs.lo), self.lo.mul(&rhs.hi), self.hi.mul(&rhs.lo), self.hi.mul(&rhs.hi)];
        let lo = p.iter().min().unwrap().round(prec, Dir::Down);
        let hi = p.iter().max().unwrap().round(prec, Dir::Up);
        *self = Interval { lo, hi, prec };
    }
}

impl Ring for Interval {
    fn zero() -> Self {
        Interval::from_int_prec(0, DEFAULT_PRECISION)
    }
    fn one() -> Self {
        Interval::from_int_prec(1, DEFAULT_PRECISION)
    }
    fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
    fn from_rational(q: &Rational) -> Self {
        Interval::from_rational_prec(q, DEFAULT_PRECISION)
    }
    fn from_int(n: i64) -> Self {
        Interval::from_int_prec(n, DEFAULT_PRECISION)
    }
}

impl Field for Interval {
    fn inv(&self) -> Result<Self> {
        Interval::from_int_prec(1, self.prec).checked_div(self)
    }
    fn pivot_score(&self) -> f64 {
        self.mignitude()
    }
}

impl RealScalar for Interval {
    fn sign(&self) -> Option<Sign> {
        if Ring::is_zero(self) {
            Some(Sign::Zero)
        } else if self.certainly_positive() {
            Some(Sign::Positive)
        } else if self.certainly_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
    fn to_f64(&self) -> f64 {
        self.mid_f64()
    }
    fn render(&self) -> String {
        self.render_decimal()
    }
    fn to_interval(&self, prec: u32) -> Interval {
        if prec < self.prec {
            self.round_to(prec)
        } else {
            self.clone().with_precision(prec)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn sqrt5_encloses_reference() {
        let five = Interval::from_int_prec(5, 53);
        let r = five.sqrt().unwrap();
        assert!(r.contains_f64(5f64.sqrt()) || r.width() < 1e-15);
        assert!(r.width() < 1e-15);
        let sq = r.clone() * r;
        assert!(sq.contains_rational(&rat(5, 1)));
    }

    #[test]
    fn rounding_is_outward() {
        let third = Interval::from_rational_prec(&rat(1, 3), 30);
        assert!(third.contains_rational(&rat(1, 3)));
        let three = Interval::from_int_prec(3, 30);
        let one = third * three;
        assert!(one.contains_rational(&rat(1, 1)));
        assert!(one.width() > 0.0);
    }

    #[test]
    fn division_by_interval_containing_zero_fails() {
        let a = Interval::from_int_prec(1, 64);
        let b = Interval::from_rational_bounds(&rat(-1, 2), &rat(1, 2), 64);
        assert_eq!(a.checked_div(&b), Err(Error::DivisionByZero));
    }

    #[test]
    fn higher_precision_is_tighter() {
        let q = rat(22, 7);
        let lo = Interval::from_rational_prec(&q, 40);
        let hi = Interval::from_rational_prec(&q, 200);
        assert!(lo.encloses(&hi));
        assert!(hi.width() < lo.width());
    }

    #[test]
    fn f64_round_trip_is_exact() {
        for x in [0.1, -3.75, 1e-300, 6.02e23] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn decimal_rendering_brackets_value() {
        let i = Interval::from_rational_prec(&rat(1, 3), 128);
        let s = i.render_decimal();
        assert!(s.starts_with("[3.333333333333333333"), "{s}");
    }
}
