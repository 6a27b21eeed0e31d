//! Exact arithmetic in Q(√5, √21) with basis {1, √5, √21, √105}.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::Signed;
use serde::{Serialize, Serializer};

use super::{int, parse_rational, render_rational, Field, Interval, Rational, RealScalar, Ring, Sign};
use crate::{Error, Result};

/// Radicands of the basis elements, in order.
const RADICANDS: [i64; 4] = [1, 5, 21, 105];
const NAMES: [&str; 4] = ["", "sqrt5", "sqrt21", "sqrt105"];

/// `e_i · e_j = FACTOR · e_k`.
const PRODUCT: [[(usize, i64); 4]; 4] = [
    [(0, 1), (1, 1), (2, 1), (3, 1)],
    [(1, 1), (0, 5), (3, 1), (2, 5)],
    [(2, 1), (3, 1), (0, 21), (1, 21)],
    [(3, 1), (2, 5), (1, 21), (0, 105)],
];

/// `c0 + c1·√5 + c2·√21 + c3·√105` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicScalar {
    c: [Rational; 4],
}

impl AlgebraicScalar {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        AlgebraicScalar { c: [c0, c1, c2, c3] }
    }

    pub fn rational(q: Rational) -> Self {
        AlgebraicScalar { c: [q, Rational::zero(), Rational::zero(), Rational::zero()] }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn sqrt5() -> Self {
        Self::new(int(0), int(1), int(0), int(0))
    }

    pub fn sqrt21() -> Self {
        Self::new(int(0), int(0), int(1), int(0))
    }

    pub fn sqrt105() -> Self {
        Self::new(int(0), int(0), int(0), int(1))
    }

    /// `a + b·√5`.
    pub fn q5(a: Rational, b: Rational) -> Self {
        Self::new(a, b, int(0), int(0))
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(|c| Ring::is_zero(c))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.c[0])
    }

    pub fn scale(&self, q: &Rational) -> Self {
        AlgebraicScalar { c: [&self.c[0] * q, &self.c[1] * q, &self.c[2] * q, &self.c[3] * q] }
    }

    /// Image under √5 ↦ −√5 (fixes √21).
    pub fn conj5(&self) -> Self {
        let [a, b, c, d] = &self.c;
        Self::new(a.clone(), -b, c.clone(), -d)
    }

    /// Image under √21 ↦ −√21 (fixes √5).
    pub fn conj21(&self) -> Self {
        let [a, b, c, d] = &self.c;
        Self::new(a.clone(), b.clone(), -c, -d)
    }

    /// Outward-rounded enclosure of the real value at `prec` bits.
    pub fn enclose(&self, prec: u32) -> Interval {
        let prec = prec.max(24);
        let work = prec + 16;
        let mut acc = Interval::from_rational_prec(&self.c[0], work);
        for i in 1..4 {
            if self.c[i].is_zero() {
                continue;
            }
            let root = Interval::from_int_prec(RADICANDS[i], work).sqrt().expect("positive radicand");
            acc += &(Interval::from_rational_prec(&self.c[i], work) * root);
        }
        acc.round_to(prec)
    }

    /// Exact sign. Zero is decided structurally; nonzero values are resolved
    /// by refining enclosures until they exclude zero.
    pub fn sign(&self) -> Sign {
        if self.c.iter().all(|c| Ring::is_zero(c)) {
            return Sign::Zero;
        }
        if self.is_rational() {
            return if self.c[0].is_positive() { Sign::Positive } else { Sign::Negative };
        }
        let [a, b, c, d] = &self.c;
        if Ring::is_zero(c) && Ring::is_zero(d) {
            // a + b·√5: compare a² with 5b² when the signs differ
            let sa = a.is_positive();
            let sb = b.is_positive();
            if Ring::is_zero(a) || sa == sb {
                return if sb { Sign::Positive } else { Sign::Negative };
            }
            let a2 = a * a;
            let b2 = b * b * int(5);
            let a_wins = a2 > b2;
            return match (a_wins, sa) {
                (true, true) | (false, false) => Sign::Positive,
                _ => Sign::Negative,
            };
        }
        let mut prec = 64;
        loop {
            let e = self.enclose(prec);
            if e.certainly_positive() {
                return Sign::Positive;
            }
            if e.certainly_negative() {
                return Sign::Negative;
            }
            prec *= 2;
        }
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if Ring::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::rational(q.recip()));
        }
        // a = A + B√5 with A, B in Q(√21); a⁻¹ = (A − B√5) / (A² − 5B²)
        let [c0, c1, c2, c3] = &self.c;
        let d0 = c0 * c0 + int(21) * c2 * c2 - int(5) * (c1 * c1 + int(21) * c3 * c3);
        let d1 = int(2) * c0 * c2 - int(10) * c1 * c3;
        // (d0 + d1√21)⁻¹ = (d0 − d1√21) / (d0² − 21 d1²)
        let norm = &d0 * &d0 - int(21) * &d1 * &d1;
        let dinv = Self::new(&d0 / &norm, int(0), -(&d1 / &norm), int(0));
        Ok(self.conj5() * dinv)
    }

    /// Canonical string `p/q[+r/s*sqrt5][+…]`.
    pub fn canonical_string(&self) -> String {
        let mut out = String::new();
        for (i, q) in self.c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let body = render_rational(&q.abs());
            let term = if i == 0 { body } else { format!("{body}*{}", NAMES[i]) };
            if q.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl Serialize for AlgebraicScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.canonical_string())
    }
}

impl FromStr for AlgebraicScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut c = [int(0), int(0), int(0), int(0)];
        let mut start = 0;
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/') {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
        for piece in pieces {
            let (coef, slot) = match piece.split_once('*') {
                Some((coef, name)) => {
                    let slot = NAMES
                        .iter()
                        .position(|n| *n == name)
                        .filter(|&k| k > 0)
                        .ok_or_else(|| Error::Parse(format!("unknown radical '{name}'")))?;
                    (coef, slot)
                }
                None => (piece, 0),
            };
            c[slot] += parse_rational(coef.trim_start_matches('+'))?;
        }
        Ok(AlgebraicScalar { c })
    }
}

impl Add for AlgebraicScalar {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl Sub for AlgebraicScalar {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl Mul for AlgebraicScalar {
    type Output = Self;
    fn mul(mut self, rhs: Self) -> Self {
        self *= &rhs;
        self
    }
}

impl Neg for AlgebraicScalar {
    type Output = Self;
    fn neg(self) -> Self {
        let [a, b, c, d] = self.c;
        AlgebraicScalar { c: [-a, -b, -c, -d] }
    }
}

impl<'a> AddAssign<&'a AlgebraicScalar> for AlgebraicScalar {
    fn add_assign(&mut self, rhs: &'a AlgebraicScalar) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl<'a> SubAssign<&'a AlgebraicScalar> for AlgebraicScalar {
    fn sub_assign(&mut self, rhs: &'a AlgebraicScalar) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl<'a> MulAssign<&'a AlgebraicScalar> for AlgebraicScalar {
    fn mul_assign(&mut self, rhs: &'a AlgebraicScalar) {
        if rhs.is_rational() {
            let q = &rhs.c[0];
            for a in self.c.iter_mut() {
                if !a.is_zero() {
                    *a *= q;
                }
            }
            return;
        }
        let mut out = [int(0), int(0), int(0), int(0)];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (k, f) = PRODUCT[i][j];
                let p = a * b;
                if f == 1 {
                    out[k] += p;
                } else {
                    out[k] += p * int(f);
                }
            }
        }
        self.c = out;
    }
}

impl Ring for AlgebraicScalar {
    fn zero() -> Self {
        Self::integer(0)
    }
    fn one() -> Self {
        Self::integer(1)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|c| Ring::is_zero(c))
    }
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }
}

impl Field for AlgebraicScalar {
    fn inv(&self) -> Result<Self> {
        self.checked_inv()
    }
    fn pivot_score(&self) -> f64 {
        if Ring::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
}

impl RealScalar for AlgebraicScalar {
    fn sign(&self) -> Option<Sign> {
        Some(AlgebraicScalar::sign(self))
    }
    fn to_f64(&self) -> f64 {
        self.enclose(64).mid_f64()
    }
    fn render(&self) -> String {
        self.canonical_string()
    }
    fn to_interval(&self, prec: u32) -> Interval {
        self.enclose(prec)
    }
    fn exact_string(&self) -> Option<String> {
        Some(self.canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q5(a: Rational, b: Rational) -> AlgebraicScalar {
        AlgebraicScalar::q5(a, b)
    }

    #[test]
    fn golden_ratio_times_conjugate() {
        let phi = q5(rat(1, 2), rat(1, 2));
        let psi = q5(rat(1, 2), rat(-1, 2));
        assert_eq!(phi * psi, AlgebraicScalar::integer(-1));
    }

    #[test]
    fn sqrt_three_sevenths_squared() {
        let s = AlgebraicScalar::sqrt21().scale(&rat(1, 7));
        assert_eq!(s.clone() * s, AlgebraicScalar::rational(rat(3, 7)));
    }

    #[test]
    fn conjugate_sum() {
        let a = q5(rat(9, 38), rat(-1, 38));
        let b = q5(rat(9, 38), rat(1, 38));
        assert_eq!(a + b, AlgebraicScalar::rational(rat(9, 19)));
    }

    #[test]
    fn radical_products_reduce() {
        let s5 = AlgebraicScalar::sqrt5();
        let s21 = AlgebraicScalar::sqrt21();
        let s105 = AlgebraicScalar::sqrt105();
        assert_eq!(s5.clone() * s21.clone(), s105.clone());
        assert_eq!(s5.clone() * s105.clone(), s21.clone() * AlgebraicScalar::integer(5));
        assert_eq!(s21 * s105, s5 * AlgebraicScalar::integer(21));
    }

    #[test]
    fn signs() {
        assert_eq!(q5(int(9), int(-1)).sign(), Sign::Positive);
        assert_eq!(AlgebraicScalar::zero().sign(), Sign::Zero);
        assert_eq!(q5(int(2), int(-1)).sign(), Sign::Negative);
        // 46 − √2205 = 46 − 21√5 ≈ −0.957, via the √21·√105 product
        let x = AlgebraicScalar::integer(46) - AlgebraicScalar::sqrt21() * AlgebraicScalar::sqrt105();
        assert_eq!(x.sign(), Sign::Negative);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(AlgebraicScalar::zero().checked_inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_in_full_tower() {
        let a = AlgebraicScalar::new(rat(1, 2), rat(-3, 1), rat(2, 7), rat(5, 3));
        let inv = a.checked_inv().unwrap();
        assert_eq!(a * inv, AlgebraicScalar::one());
    }

    #[test]
    fn enclosure_of_w() {
        let w = q5(rat(9, 38), rat(-1, 38));
        let e = w.enclose(53);
        assert!(e.width() < 1e-15);
        let reference = (9.0 - 5f64.sqrt()) / 38.0;
        assert!((e.mid_f64() - reference).abs() < 1e-16);
        assert!(e.render_decimal().contains("1.779982111184265"), "{}", e.render_decimal());
        let zero = AlgebraicScalar::zero().enclose(53);
        assert!(Ring::is_zero(&zero));
    }

    #[test]
    fn canonical_string_round_trips() {
        let a = AlgebraicScalar::new(rat(9, 38), rat(-1, 38), int(0), rat(3, 2));
        let s = a.canonical_string();
        assert_eq!(s, "9/38-1/38*sqrt5+3/2*sqrt105");
        assert_eq!(s.parse::<AlgebraicScalar>().unwrap(), a);
        assert_eq!("-1/7*sqrt21".parse::<AlgebraicScalar>().unwrap(), AlgebraicScalar::sqrt21().scale(&rat(-1, 7)));
        assert_eq!(AlgebraicScalar::zero().canonical_string(), "0");
    }
}
