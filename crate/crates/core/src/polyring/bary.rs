use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::MultiIndex;
use crate::scalar::{rat, RealScalar, Ring, Sign};
use crate::{Error, Result};

/// Sparse polynomial in barycentric variables λ₁ … λ_m over a single
/// coefficient domain. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct BaryPoly<C> {
    nvars: usize,
    terms: BTreeMap<MultiIndex, C>,
}

/// Outcome of a coefficient-sign scan.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientSign {
    AllNonnegative,
    HasNegative(MultiIndex),
}

impl<C: Ring> BaryPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        BaryPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(MultiIndex::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn monomial(idx: MultiIndex, c: C) -> Self {
        let nvars = idx.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(idx, c);
        }
        BaryPoly { nvars, terms }
    }

    /// The coordinate λ_i (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(nvars, i, 1), C::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, C)>) -> Self {
        let mut acc: FxHashMap<MultiIndex, C> = FxHashMap::default();
        for (idx, c) in terms {
            assert_eq!(idx.nvars(), nvars, "multi-index length mismatch");
            match acc.get_mut(&idx) {
                Some(slot) => *slot += &c,
                None => {
                    acc.insert(idx, c);
                }
            }
        }
        Self::from_accumulator(nvars, acc)
    }

    fn from_accumulator(nvars: usize, acc: FxHashMap<MultiIndex, C>) -> Self {
        BaryPoly { nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Σλ, the first power sum.
    pub fn linear_sum(nvars: usize) -> Self {
        Self::power_sum(1, nvars)
    }

    /// p_r(λ) = Σ λ_i^r.
    pub fn power_sum(r: u32, nvars: usize) -> Self {
        BaryPoly {
            nvars,
            terms: (0..nvars).map(|i| (MultiIndex::unit(nvars, i, r), C::one())).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (MultiIndex, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> C {
        self.terms.get(idx).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_of(&self, exps: &[u32]) -> C {
        self.coeff(&MultiIndex::new(exps.to_vec()))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).min().unwrap_or(0)
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        out.add_in_place(other, false);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        out.add_in_place(other, true);
        Ok(out)
    }

    fn add_in_place(&mut self, other: &Self, negate: bool) {
        for (idx, c) in &other.terms {
            let remove = match self.terms.get_mut(idx) {
                Some(slot) => {
                    if negate {
                        *slot -= c;
                    } else {
                        *slot += c;
                    }
                    slot.is_zero()
                }
                None => {
                    let v = if negate { -c.clone() } else { c.clone() };
                    self.terms.insert(idx.clone(), v);
                    false
                }
            };
            if remove {
                self.terms.remove(idx);
            }
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mut acc: FxHashMap<MultiIndex, C> =
            FxHashMap::with_capacity_and_hasher(self.len() * other.len() / 2 + 1, Default::default());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let p = ca.mul_ref(cb);
                let idx = a.add(b);
                match acc.get_mut(&idx) {
                    Some(slot) => *slot += &p,
                    None => {
                        acc.insert(idx, p);
                    }
                }
            }
        }
        Ok(Self::from_accumulator(self.nvars, acc))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        BaryPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(i, x)| (i.clone(), x.mul_ref(c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> BaryPoly<D> {
        BaryPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), f(c))).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Direct sparse evaluation.
    pub fn eval(&self, x: &[C]) -> C {
        assert_eq!(x.len(), self.nvars, "point has wrong number of coordinates");
        let maxdeg = self.degree() as usize;
        // powers[i][k] = x_i^k
        let powers: Vec<Vec<C>> = x
            .iter()
            .map(|xi| {
                let mut p = Vec::with_capacity(maxdeg + 1);
                p.push(C::one());
                for k in 1..=maxdeg {
                    let next = p[k - 1].mul_ref(xi);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = C::zero();
        for (idx, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in idx.exps().iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Multiplies each term by (Σλ)^(target − deg(term)).
    pub fn homogenize(&self, target: u32) -> Result<Self> {
        let degree = self.degree();
        if target < degree {
            return Err(Error::DegreeTooLow { target, degree });
        }
        let p1 = Self::linear_sum(self.nvars);
        let mut powers = vec![Self::one(self.nvars)];
        for k in 1..=(target - self.min_degree()) as usize {
            let next = &powers[k - 1] * &p1;
            powers.push(next);
        }
        let mut out = Self::zero(self.nvars);
        for (idx, c) in &self.terms {
            let lift = &powers[(target - idx.degree()) as usize];
            let term = Self::monomial(idx.clone(), c.clone());
            out.add_in_place(&(&term * lift), false);
        }
        Ok(out)
    }

    /// p · (Σλ)^r, expanded.
    pub fn degree_elevate(&self, r: u32) -> Self {
        let mut cur = self.clone();
        for _ in 0..r {
            cur = cur.elevate_once();
        }
        cur
    }

    pub(crate) fn elevate_once(&self) -> Self {
        let mut acc: FxHashMap<MultiIndex, C> =
            FxHashMap::with_capacity_and_hasher(self.len() * 2, Default::default());
        for (idx, c) in &self.terms {
            for i in 0..self.nvars {
                let up = idx.bump(i);
                match acc.get_mut(&up) {
                    Some(slot) => *slot += c,
                    None => {
                        acc.insert(up, c.clone());
                    }
                }
            }
        }
        Self::from_accumulator(self.nvars, acc)
    }

    /// Rewrites the polynomial in barycentric coordinates μ of the sub-simplex
    /// spanned by V₁ … V_d and the centroid, via λ_j = μ_j + μ_{d+1}/(d+1)
    /// for j ≤ d and λ_{d+1} = μ_{d+1}/(d+1).
    pub fn substitute_subsimplex(&self) -> Self {
        let m = self.nvars;
        if m == 0 {
            return self.clone();
        }
        let last = m - 1;
        let c = C::from_rational(&rat(1, m as i64));
        let maxdeg = self.degree() as usize;
        // expansion[e][i] = C(e, i) c^i : coefficient of μ_j^(e−i) μ_last^i in (μ_j + c μ_last)^e
        let mut cpow = vec![C::one()];
        for k in 1..=maxdeg {
            let next = cpow[k - 1].mul_ref(&c);
            cpow.push(next);
        }
        let mut expansion: Vec<Vec<C>> = Vec::with_capacity(maxdeg + 1);
        let mut binom: Vec<u64> = vec![1];
        for e in 0..=maxdeg {
            if e > 0 {
                let mut next = vec![1u64; e + 1];
                for i in 1..e {
                    next[i] = binom[i - 1] + binom[i];
                }
                binom = next;
            }
            expansion.push(
                (0..=e).map(|i| C::from_int(binom[i] as i64).mul_ref(&cpow[i])).collect(),
            );
        }

        let mut acc: FxHashMap<MultiIndex, C> = FxHashMap::default();
        let mut partial: Vec<(Vec<u32>, u32, C)> = Vec::new();
        let mut next: Vec<(Vec<u32>, u32, C)> = Vec::new();
        for (idx, coef) in &self.terms {
            partial.clear();
            // (exponents of μ_1..μ_d, exponent of μ_last, coefficient)
            partial.push((Vec::with_capacity(m), idx.get(last), coef.mul_ref(&cpow[idx.get(last) as usize])));
            for j in 0..last {
                let e = idx.get(j) as usize;
                next.clear();
                for (exps, lastexp, pc) in &partial {
                    for i in 0..=e {
                        let mut ex = exps.clone();
                        ex.push((e - i) as u32);
                        next.push((ex, lastexp + i as u32, pc.mul_ref(&expansion[e][i])));
                    }
                }
                std::mem::swap(&mut partial, &mut next);
            }
            for (mut exps, lastexp, pc) in partial.drain(..) {
                exps.push(lastexp);
                let key = MultiIndex::new(exps);
                match acc.get_mut(&key) {
                    Some(slot) => *slot += &pc,
                    None => {
                        acc.insert(key, pc);
                    }
                }
            }
        }
        Self::from_accumulator(m, acc)
    }

    /// Drops every term containing the last variable (restriction to the face
    /// λ_m = 0). The variable count is kept.
    pub fn restrict_last_var_zero(&self) -> Self {
        let last = self.nvars.saturating_sub(1);
        BaryPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(i, _)| i.get(last) == 0).map(|(i, c)| (i.clone(), c.clone())).collect(),
        }
    }

    /// Terms whose exponent in `var` equals `e`.
    pub fn slice_by_exponent(&self, var: usize, e: u32) -> Self {
        BaryPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(i, _)| i.get(var) == e).map(|(i, c)| (i.clone(), c.clone())).collect(),
        }
    }

    /// Exact division by λ_var; `None` if some term lacks the variable.
    pub fn divide_by_var(&self, var: usize) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (idx, c) in &self.terms {
            if idx.get(var) == 0 {
                return None;
            }
            let mut exps = idx.exps().to_vec();
            exps[var] -= 1;
            terms.insert(MultiIndex::new(exps), c.clone());
        }
        Some(BaryPoly { nvars: self.nvars, terms })
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (idx, c) in &self.terms {
            let e = idx.get(var);
            if e == 0 {
                continue;
            }
            let mut exps = idx.exps().to_vec();
            exps[var] -= 1;
            terms.insert(MultiIndex::new(exps), c.mul_ref(&C::from_int(e as i64)));
        }
        BaryPoly { nvars: self.nvars, terms }
    }

    /// Renames variables: λ_i becomes λ_{perm[i]}.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        BaryPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(i, c)| (i.permuted(perm), c.clone())).collect(),
        }
    }

    /// Embeds into `nvars` variables, sending λ_i to λ_{positions[i]}.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Self {
        BaryPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(idx, c)| {
                    let mut exps = vec![0; nvars];
                    for (i, &e) in idx.exps().iter().enumerate() {
                        exps[positions[i]] = e;
                    }
                    (MultiIndex::new(exps), c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes polynomials (all in a common variable count) for the
    /// variables.
    pub fn compose(&self, images: &[BaryPoly<C>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let maxdeg = self.degree() as usize;
        let powers: Vec<Vec<BaryPoly<C>>> = images
            .iter()
            .map(|img| {
                let mut p = vec![BaryPoly::one(target)];
                for k in 1..=maxdeg {
                    let next = &p[k - 1] * img;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = BaryPoly::zero(target);
        for (idx, c) in &self.terms {
            let mut t = BaryPoly::constant(target, c.clone());
            for (i, &e) in idx.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out.add_in_place(&t, false);
        }
        out
    }

    /// Renders with the given variable names, e.g. `["x", "y", "z"]`.
    pub fn render_with(&self, names: &[&str]) -> String
    where
        C: RealScalar,
    {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (idx, c) in self.terms.iter().rev() {
            let mono: Vec<String> = idx
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].to_string() } else { format!("{}^{e}", names[i]) })
                .collect();
            let coef = c.render();
            if mono.is_empty() {
                parts.push(format!("({coef})"));
            } else {
                parts.push(format!("({coef})*{}", mono.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl<C: RealScalar> BaryPoly<C> {
    /// Scans all coefficients; a negative one is reported with its index.
    /// Undecidable signs (interval coefficients straddling zero) are an error
    /// unless a certainly negative coefficient was found.
    pub fn min_coefficient_sign(&self) -> Result<CoefficientSign> {
        let mut undetermined = None;
        for (idx, c) in &self.terms {
            match c.sign() {
                Some(Sign::Negative) => return Ok(CoefficientSign::HasNegative(idx.clone())),
                Some(_) => {}
                None => {
                    if undetermined.is_none() {
                        undetermined = Some(c.render());
                    }
                }
            }
        }
        match undetermined {
            Some(s) => Err(Error::UndeterminedSign(s)),
            None => Ok(CoefficientSign::AllNonnegative),
        }
    }

    pub fn to_f64_poly(&self) -> BaryPoly<f64> {
        self.map_coeffs(|c| c.to_f64())
    }
}

impl<C: Ring> fmt::Debug for BaryPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<'a, C: Ring> Add<&'a BaryPoly<C>> for &'a BaryPoly<C> {
    type Output = BaryPoly<C>;
    fn add(self, rhs: &'a BaryPoly<C>) -> BaryPoly<C> {
        self.checked_add(rhs).expect("polynomial variable counts differ")
    }
}

impl<'a, C: Ring> Sub<&'a BaryPoly<C>> for &'a BaryPoly<C> {
    type Output = BaryPoly<C>;
    fn sub(self, rhs: &'a BaryPoly<C>) -> BaryPoly<C> {
        self.checked_sub(rhs).expect("polynomial variable counts differ")
    }
}

impl<'a, C: Ring> Mul<&'a BaryPoly<C>> for &'a BaryPoly<C> {
    type Output = BaryPoly<C>;
    fn mul(self, rhs: &'a BaryPoly<C>) -> BaryPoly<C> {
        self.checked_mul(rhs).expect("polynomial variable counts differ")
    }
}

impl<C: Ring> Neg for BaryPoly<C> {
    type Output = BaryPoly<C>;
    fn neg(self) -> BaryPoly<C> {
        BaryPoly { nvars: self.nvars, terms: self.terms.into_iter().map(|(i, c)| (i, -c)).collect() }
    }
}

impl<C: Ring> std::iter::Sum<BaryPoly<C>> for Option<BaryPoly<C>> {
    fn sum<I: Iterator<Item = BaryPoly<C>>>(iter: I) -> Self {
        let mut acc: Option<BaryPoly<C>> = None;
        for p in iter {
            match acc.as_mut() {
                Some(a) => a.add_in_place(&p, false),
                None => acc = Some(p),
            }
        }
        acc
    }
}

impl<C: Ring> BaryPoly<C> {
    /// Sum of polynomials sharing `nvars` variables.
    pub fn sum_all(nvars: usize, polys: impl IntoIterator<Item = BaryPoly<C>>) -> Self {
        let mut acc = Self::zero(nvars);
        for p in polys {
            acc.add_in_place(&p, false);
        }
        acc
    }
}
