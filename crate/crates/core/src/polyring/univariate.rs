//! Dense univariate polynomials over Q: Sturm-sequence root isolation,
//! Legendre polynomials, and enough ring structure to take resultants over
//! Q[v] by fraction-free elimination.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{int, rat, render_rational, Domain, Interval, Rational};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Upoly {
    coeffs: Vec<Rational>,
}

impl Upoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Upoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate x.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// a·x + b
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use crate::scalar::RealScalar;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let prec = x.precision();
        let mut acc = Interval::from_int_prec(0, prec);
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + Interval::from_rational_prec(c, prec);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect(),
        )
    }

    /// Euclidean division: `self = q·rhs + r` with deg r < deg rhs.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let dr = rhs.coeffs.len() - 1;
        let lead_inv = rhs.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dr {
            return (Upoly::default(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dr];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dr] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dr);
        (Upoly::new(quot), Upoly::new(rem))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Removes repeated factors.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            self.monic()
        } else {
            self.div_rem(&g).0.monic()
        }
    }

    /// Scales to coprime integer coefficients with positive leading term.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    pub fn sturm_sequence(&self) -> Vec<Upoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(-r);
        }
        seq
    }

    /// Number of distinct real roots in (a, b], for a < b.
    pub fn count_roots(sturm: &[Upoly], a: &Rational, b: &Rational) -> usize {
        let var = |x: &Rational| -> usize {
            let mut count = 0;
            let mut prev: Option<bool> = None;
            for p in sturm {
                let v = p.eval(x);
                if v.is_zero() {
                    continue;
                }
                let pos = v.is_positive();
                if prev.is_some_and(|q| q != pos) {
                    count += 1;
                }
                prev = Some(pos);
            }
            count
        };
        var(a).saturating_sub(var(b))
    }

    /// Disjoint isolating intervals [lo, hi] (half-open (lo, hi]) for the
    /// real roots in (a, b], sorted increasingly.
    pub fn isolate_roots(&self, a: &Rational, b: &Rational) -> Vec<(Rational, Rational)> {
        let sf = self.square_free();
        if sf.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sturm = sf.sturm_sequence();
        let mut out = Vec::new();
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((lo, hi)) = stack.pop() {
            match Self::count_roots(&sturm, &lo, &hi) {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / int(2);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort();
        out
    }

    /// Shrinks an isolating interval of a simple root to width ≤ 2^-bits.
    pub fn refine_root(&self, lo: &Rational, hi: &Rational, bits: u32) -> (Rational, Rational) {
        let sf = self.square_free();
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        let eps = Rational::new(BigInt::one(), BigInt::one() << bits);
        if sf.eval(&hi).is_zero() {
            return (hi.clone(), hi);
        }
        let hi_pos = sf.eval(&hi).is_positive();
        while &hi - &lo > eps {
            let mid = (&lo + &hi) / int(2);
            let v = sf.eval(&mid);
            if v.is_zero() {
                return (mid.clone(), mid);
            }
            if v.is_positive() == hi_pos {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }

    /// All real roots in (a, b] as intervals of width ≤ 2^-bits.
    pub fn real_roots(&self, a: &Rational, b: &Rational, bits: u32) -> Vec<Interval> {
        let prec = bits.max(64) + 16;
        self.isolate_roots(a, b)
            .into_iter()
            .map(|(lo, hi)| {
                let (lo, hi) = self.refine_root(&lo, &hi, bits);
                Interval::from_rational_bounds(&lo, &hi, prec)
            })
            .collect()
    }

    /// Legendre polynomial P_n by the three-term recurrence.
    pub fn legendre(n: u32) -> Self {
        let mut prev = Upoly::from_ints(&[1]);
        if n == 0 {
            return prev;
        }
        let mut cur = Upoly::x();
        for k in 1..n as i64 {
            // (k+1) P_{k+1} = (2k+1) x P_k − k P_{k−1}
            let next = (&(&Upoly::x() * &cur).scale(&int(2 * k + 1)) - &prev.scale(&int(k))).scale(&rat(1, k + 1));
            prev = cur;
            cur = next;
        }
        cur
    }

    pub fn compose(&self, inner: &Upoly) -> Upoly {
        let mut acc = Upoly::default();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Upoly::constant(c.clone());
        }
        acc
    }
}

impl fmt::Debug for Upoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Upoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = render_rational(&c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.as_str()) {
                (0, _) => write!(f, "{mag}")?,
                (1, "1") => write!(f, "x")?,
                (1, _) => write!(f, "{mag}*x")?,
                (_, "1") => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Upoly> for &'a Upoly {
    type Output = Upoly;
    fn add(self, rhs: &'a Upoly) -> Upoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Upoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Upoly> for &'a Upoly {
    type Output = Upoly;
    fn sub(self, rhs: &'a Upoly) -> Upoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Upoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Upoly> for &'a Upoly {
    type Output = Upoly;
    fn mul(self, rhs: &'a Upoly) -> Upoly {
        if self.is_zero() || rhs.is_zero() {
            return Upoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Upoly::new(out)
    }
}

impl Add for Upoly {
    type Output = Upoly;
    fn add(self, rhs: Upoly) -> Upoly {
        &self + &rhs
    }
}

impl Sub for Upoly {
    type Output = Upoly;
    fn sub(self, rhs: Upoly) -> Upoly {
        &self - &rhs
    }
}

impl Mul for Upoly {
    type Output = Upoly;
    fn mul(self, rhs: Upoly) -> Upoly {
        &self * &rhs
    }
}

impl Neg for Upoly {
    type Output = Upoly;
    fn neg(self) -> Upoly {
        Upoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<'a> AddAssign<&'a Upoly> for Upoly {
    fn add_assign(&mut self, rhs: &'a Upoly) {
        *self = &*self + rhs;
    }
}

impl<'a> SubAssign<&'a Upoly> for Upoly {
    fn sub_assign(&mut self, rhs: &'a Upoly) {
        *self = &*self - rhs;
    }
}

impl<'a> MulAssign<&'a Upoly> for Upoly {
    fn mul_assign(&mut self, rhs: &'a Upoly) {
        *self = &*self * rhs;
    }
}

impl crate::scalar::Ring for Upoly {
    fn zero() -> Self {
        Upoly::default()
    }
    fn one() -> Self {
        Upoly::from_ints(&[1])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_rational(q: &Rational) -> Self {
        Upoly::constant(q.clone())
    }
}

impl Domain for Upoly {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_five() {
        let p5 = Upoly::legendre(5);
        assert_eq!(p5, Upoly::new(vec![int(0), rat(15, 8), int(0), rat(-70, 8), int(0), rat(63, 8)]));
        assert_eq!(p5.derivative(), Upoly::new(vec![rat(15, 8), int(0), rat(-210, 8), int(0), rat(315, 8)]));
    }

    #[test]
    fn division_round_trip() {
        let a = Upoly::from_ints(&[1, 2, 3, 4]);
        let b = Upoly::from_ints(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert_eq!(r.degree(), Some(0));
    }

    #[test]
    fn sturm_counts_legendre_roots() {
        let p = Upoly::legendre(6);
        let roots = p.isolate_roots(&int(-1), &int(1));
        assert_eq!(roots.len(), 6);
    }

    #[test]
    fn refine_sqrt_two() {
        let p = Upoly::from_ints(&[-2, 0, 1]);
        let r = p.real_roots(&int(0), &int(2), 100);
        assert_eq!(r.len(), 1);
        assert!(r[0].contains_f64(std::f64::consts::SQRT_2) || (r[0].mid_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(r[0].width() < 1e-29);
    }

    #[test]
    fn square_free_part() {
        let p = &Upoly::from_ints(&[-1, 1]) * &Upoly::from_ints(&[-1, 1]);
        assert_eq!(p.square_free(), Upoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(Upoly::from_ints(&[5, -235, 0, 1]).to_string(), "x^3 - 235*x + 5");
    }
}
