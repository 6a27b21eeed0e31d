//! Schur polynomials by semistandard tableaux, and the degree-2 identities
//! built on them.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certify::fejer_defect;
use crate::interp::lagrange_solve;
use crate::linalg::bareiss_det;
use crate::pointsets::{faces, fekete_candidate_exact};
use crate::polyring::{BaryPoly, MultiIndex};
use crate::scalar::{int, rat, AlgebraicScalar, Rational, Ring};
use crate::{Error, Result};

/// A weakly decreasing sequence of nonnegative integers. Trailing zeros are
/// dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }
}

/// s_μ(1^m) by the Weyl dimension formula Π_{i<j} (μ_i − μ_j + j − i)/(j − i).
pub fn weyl_dimension(mu: &Partition, m: usize) -> Rational {
    let mut num = int(1);
    let mut den = int(1);
    for i in 0..m {
        for j in i + 1..m {
            num *= int(mu.part(i) as i64 - mu.part(j) as i64 + (j - i) as i64);
            den *= int((j - i) as i64);
        }
    }
    num / den
}

type Memo = HashMap<(Vec<u32>, usize), BaryPoly<Rational>>;

/// All ν ⊆ μ with μ/ν a horizontal strip: μ_{i+1} ≤ ν_i ≤ μ_i.
fn horizontal_strips(mu: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for i in 0..mu.len() {
        let lo = mu.get(i + 1).copied().unwrap_or(0);
        let mut next = Vec::new();
        for prefix in &out {
            for v in lo..=mu[i] {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// s_μ(x₁ … x_k) embedded in `m` variables. The entries equal to k in a
/// tableau form the horizontal strip μ/ν.
fn schur_rec(mu: &[u32], k: usize, m: usize, memo: &mut Memo) -> BaryPoly<Rational> {
    let nonzero = mu.iter().filter(|&&p| p > 0).count();
    if nonzero == 0 {
        return BaryPoly::one(m);
    }
    if k == 0 || nonzero > k {
        return BaryPoly::zero(m);
    }
    let key = (mu.to_vec(), k);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let total: u32 = mu.iter().sum();
    let mut acc = BaryPoly::zero(m);
    for nu in horizontal_strips(mu) {
        let strip = total - nu.iter().sum::<u32>();
        let mut trimmed = nu.clone();
        while trimmed.last() == Some(&0) {
            trimmed.pop();
        }
        let lower = schur_rec(&trimmed, k - 1, m, memo);
        if lower.is_zero() {
            continue;
        }
        let x = BaryPoly::monomial(MultiIndex::unit(m, k - 1, strip), int(1));
        acc = &acc + &(&lower * &x);
    }
    memo.insert(key, acc.clone());
    acc
}

/// The Schur polynomial s_μ in m variables with integer coefficients.
pub fn schur_expand(mu: &Partition, m: usize) -> Result<BaryPoly<Rational>> {
    if mu.len() > m {
        return Err(Error::TooManyParts { parts: mu.len(), vars: m });
    }
    let mut memo = Memo::new();
    Ok(schur_rec(mu.parts(), m, m, &mut memo))
}

/// s_μ, or zero when μ has more parts than variables.
fn schur_or_zero(mu: &[u32], m: usize) -> BaryPoly<Rational> {
    let p = Partition::new(mu.to_vec()).expect("literal partition");
    schur_expand(&p, m).unwrap_or_else(|_| BaryPoly::zero(m))
}

/// det([x_i^{μ_j+m−j}]) / Π_{i<j}(x_i − x_j) at distinct rationals.
pub fn bialternant(mu: &Partition, x: &[Rational]) -> Result<Rational> {
    let m = x.len();
    if mu.len() > m {
        return Err(Error::TooManyParts { parts: mu.len(), vars: m });
    }
    let a: Vec<Vec<Rational>> = x
        .iter()
        .map(|xi| (0..m).map(|j| num_traits::pow(xi.clone(), (mu.part(j) as usize) + m - 1 - j)).collect())
        .collect();
    let mut vdm = int(1);
    for i in 0..m {
        for j in i + 1..m {
            vdm *= &x[i] - &x[j];
        }
    }
    if Ring::is_zero(&vdm) {
        return Err(Error::DivisionByZero);
    }
    Ok(bareiss_det(&a) / vdm)
}

fn to_algebraic(p: &BaryPoly<Rational>) -> BaryPoly<AlgebraicScalar> {
    p.map_coeffs(|c| AlgebraicScalar::rational(c.clone()))
}

fn combination(m: usize, terms: &[(i64, &[u32])]) -> BaryPoly<Rational> {
    BaryPoly::sum_all(m, terms.iter().map(|(c, mu)| schur_or_zero(mu, m).scale(&int(*c))))
}

/// 1 − K₂ = 6s_{31} − 18s_{22} + 16s_{211} − 6s_{1111} in d+1 variables,
/// as an exact polynomial identity.
pub fn verify_k2_schur_identity(d: usize) -> Result<bool> {
    let m = d + 1;
    let basis = lagrange_solve(&fekete_candidate_exact(2, d)?, 2)?;
    let defect = fejer_defect(&basis, 2)?;
    let rhs = combination(m, &[(6, &[3, 1]), (-18, &[2, 2]), (16, &[2, 1, 1]), (-6, &[1, 1, 1, 1])]);
    Ok(defect == to_algebraic(&rhs))
}

/// Σ_{i<j} λ_iλ_j(λ_i − λ_j)² = s_{31} − 3s_{22} + s_{211}.
pub fn verify_companion_identity(d: usize) -> bool {
    let m = d + 1;
    let lam = |i| BaryPoly::<Rational>::var(m, i);
    let lhs = BaryPoly::sum_all(
        m,
        faces(m, 2).into_iter().map(|f| {
            let diff = &lam(f[0]) - &lam(f[1]);
            &(&lam(f[0]) * &lam(f[1])) * &(&diff * &diff)
        }),
    );
    lhs == combination(m, &[(1, &[3, 1]), (-3, &[2, 2]), (1, &[2, 1, 1])])
}

/// Prefix-sum dominance μ₁ ⪰ μ₂; the weights must agree.
pub fn majorizes(mu1: &Partition, mu2: &Partition) -> Result<bool> {
    if mu1.weight() != mu2.weight() {
        return Err(Error::UnequalWeights(mu1.weight(), mu2.weight()));
    }
    let len = mu1.len().max(mu2.len());
    let (mut a, mut b) = (0u32, 0u32);
    for k in 0..len {
        a += mu1.part(k);
        b += mu2.part(k);
        if a < b {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize)]
pub struct SraReport {
    pub mu1: Partition,
    pub mu2: Partition,
    pub vars: usize,
    pub samples: usize,
    /// Sample points where s_μ₁(x)/s_μ₁(1^m) < s_μ₂(x)/s_μ₂(1^m).
    pub violations: Vec<Vec<String>>,
    /// Violations of s_{211} ≥ 3(d+2)/(d−2)·s_{1111}, d = m − 1; checked only
    /// for m ≥ 4 and d > 2.
    pub derived_bound_checked: bool,
    pub derived_bound_violations: usize,
}

/// Random nonnegative rational points with small denominators.
pub fn random_nonnegative_points(m: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..m).map(|_| rat(rng.gen_range(0..=40), rng.gen_range(1..=12))).collect()).collect()
}

/// Checks the normalized Schur inequality at `samples` random nonnegative
/// rational points (exactly), plus the bound between s_{211} and s_{1111}.
pub fn sra_inequality_check(mu1: &Partition, mu2: &Partition, m: usize, samples: usize, seed: u64) -> Result<SraReport> {
    if !majorizes(mu1, mu2)? {
        return Err(Error::NotMajorized(mu1.parts.clone(), mu2.parts.clone()));
    }
    let s1 = schur_expand(mu1, m)?;
    let s2 = schur_expand(mu2, m)?;
    let n1 = weyl_dimension(mu1, m);
    let n2 = weyl_dimension(mu2, m);
    let d = m as i64 - 1;
    let derived = (m >= 4 && d > 2).then(|| (schur_or_zero(&[2, 1, 1], m), schur_or_zero(&[1, 1, 1, 1], m), rat(3 * (d + 2), d - 2)));
    let mut violations = Vec::new();
    let mut derived_bad = 0;
    for x in random_nonnegative_points(m, samples, seed) {
        let lhs = s1.eval(&x) / &n1;
        let rhs = s2.eval(&x) / &n2;
        if lhs < rhs {
            violations.push(x.iter().map(crate::scalar::render_rational).collect());
        }
        if let Some((a, b, c)) = &derived {
            if a.eval(&x) < c * b.eval(&x) {
                derived_bad += 1;
            }
        }
    }
    Ok(SraReport {
        mu1: mu1.clone(),
        mu2: mu2.clone(),
        vars: m,
        samples,
        violations,
        derived_bound_checked: derived.is_some(),
        derived_bound_violations: derived_bad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_schur_polynomials() {
        assert_eq!(schur_expand(&p(&[1]), 3).unwrap(), BaryPoly::linear_sum(3));
        let s11 = schur_expand(&p(&[1, 1]), 3).unwrap();
        assert_eq!(s11.len(), 3);
        let s2 = schur_expand(&p(&[2]), 2).unwrap();
        assert_eq!(s2.len(), 3);
    }

    #[test]
    fn values_at_ones() {
        for d in 3..=8 {
            let m = d + 1;
            let ones = vec![int(1); m];
            let b = |n, k| int(crate::pointsets::binomial(n, k) as i64);
            assert_eq!(schur_expand(&p(&[2, 1, 1]), m).unwrap().eval(&ones), int(3) * b(d as u64 + 2, 4));
            assert_eq!(schur_expand(&p(&[1, 1, 1, 1]), m).unwrap().eval(&ones), b(d as u64 + 1, 4));
            assert_eq!(weyl_dimension(&p(&[2, 1, 1]), m), int(3) * b(d as u64 + 2, 4));
        }
    }

    #[test]
    fn bialternant_agrees() {
        let x = vec![rat(1, 2), rat(3, 1), rat(-2, 3), rat(5, 7)];
        for mu in [p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])] {
            assert_eq!(bialternant(&mu, &x).unwrap(), schur_expand(&mu, 4).unwrap().eval(&x));
        }
    }

    #[test]
    fn degree_two_schur_identity() {
        for d in 3..=4 {
            assert!(verify_k2_schur_identity(d).unwrap());
            assert!(verify_companion_identity(d));
        }
    }

    #[test]
    fn majorization() {
        assert!(majorizes(&p(&[2, 1, 1]), &p(&[1, 1, 1, 1])).unwrap());
        assert!(majorizes(&p(&[3, 1]), &p(&[2, 2])).unwrap());
        assert!(!majorizes(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(matches!(majorizes(&p(&[2]), &p(&[1])), Err(Error::UnequalWeights(2, 1))));
    }

    #[test]
    fn sra_sample() {
        let r = sra_inequality_check(&p(&[2, 1, 1]), &p(&[1, 1, 1, 1]), 5, 200, 3).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.derived_bound_checked);
        assert_eq!(r.derived_bound_violations, 0);
        assert!(sra_inequality_check(&p(&[1, 1, 1, 1]), &p(&[2, 1, 1]), 5, 1, 0).is_err());
    }
}
