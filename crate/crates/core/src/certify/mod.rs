//! Fejér certificates: Σℓ² ≤ 1 on S_d by restriction to the sub-simplex
//! spanned by one facet and the centroid, subtraction of the facet part, and
//! degree elevation until no coefficient is negative.
//!
//! Elevation nonnegativity is only sufficient. A run that exhausts `r_max`
//! is inconclusive, never a refutation; refutations come only from an
//! explicit point where the kernel exceeds one.

mod special;

use std::time::Instant;

use serde::Serialize;

pub use special::{
    cubic_triangle_decomposition, deg2_decomposition, deg2_power_sum_form, CubicTriangleReport,
};

use crate::interp::{kernel_k, lagrange_solve, LagrangeBasis};
use crate::pointsets::{fekete_candidate, fekete_candidate_exact, CandidateSet};
use crate::polyring::{BaryPoly, CoefficientSign};
use crate::scalar::{rat, AlgebraicScalar, Interval, Scalar, Sign, DEFAULT_PRECISION};
use crate::{Error, Result};

/// How a certificate was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Sub-simplex restriction, facet subtraction, degree elevation.
    Elevation,
    /// Explicit decomposition into visibly nonnegative terms plus an
    /// elevated remainder (degree three on the triangle).
    Decomposition,
    /// The one-dimensional case: Fejér's theorem for the Gauss–Lobatto
    /// (Fekete) nodes of an interval.
    Classical,
    /// Bounded by a quantity certified elsewhere (Σℓ⁴ ≤ Σℓ² when |ℓ| ≤ 1).
    Reduction,
    /// Only a witness search was run.
    Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Status {
    Certified,
    /// Exact or enclosed value strictly above one at `point`.
    Refuted { point: Vec<String>, value: String },
    /// A negative coefficient survives elevation by `max_r`.
    Inconclusive { max_r: u32, negative_witness: Option<Vec<u32>>, reason: String },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CertStats {
    /// Terms of the polynomial handed to elevation.
    pub term_count: usize,
    /// Terms after the last elevation step.
    pub elevated_terms: usize,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FejerCertificate {
    pub degree: u32,
    pub dim: usize,
    /// What is bounded by one, e.g. "sum l^2".
    pub target: String,
    pub method: Method,
    /// First elevation exponent with all coefficients nonnegative.
    pub r: Option<u32>,
    pub status: Status,
    /// Statements the certificate relies on but does not prove.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assumes: Vec<String>,
    pub stats: CertStats,
}

impl FejerCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.status, Status::Refuted { .. })
    }

    fn new(degree: u32, dim: usize, target: &str, method: Method, status: Status) -> Self {
        FejerCertificate { degree, dim, target: target.into(), method, r: None, status, assumes: Vec::new(), stats: CertStats::default() }
    }
}

/// (Σλ)^{2n} − Σ ℓ̃_i², homogeneous of degree 2n.
pub fn fejer_defect<S: Scalar>(basis: &LagrangeBasis<S>, n: u32) -> Result<BaryPoly<S>> {
    let k = kernel_k(basis);
    let one = BaryPoly::<S>::linear_sum(basis.nvars).pow(2 * n);
    let k = k.homogenize(2 * n)?;
    one.checked_sub(&k)
}

/// Raises `g` by Σμ one step at a time, returning the first r ≤ `r_max`
/// with no negative coefficient.
pub fn elevate_until_nonnegative<S: Scalar>(g: &BaryPoly<S>, r_max: u32) -> Result<(Option<u32>, Option<Vec<u32>>, usize)> {
    let mut cur = g.clone();
    let mut last_negative = None;
    for r in 0..=r_max {
        match cur.min_coefficient_sign()? {
            CoefficientSign::AllNonnegative => return Ok((Some(r), None, cur.len())),
            CoefficientSign::HasNegative(idx) => last_negative = Some(idx.exps().to_vec()),
        }
        if r < r_max {
            cur = cur.degree_elevate(1);
        }
    }
    Ok((None, last_negative, cur.len()))
}

/// G = H(μ) − H(μ̂, 0) on the sub-simplex with vertices V₁ … V_d and the
/// centroid.
pub fn subsimplex_difference<S: Scalar>(h: &BaryPoly<S>) -> BaryPoly<S> {
    let sub = h.substitute_subsimplex();
    let face = sub.restrict_last_var_zero();
    &sub - &face
}

/// Runs the sub-simplex pipeline on a homogeneous H in d+1 variables. The
/// facet case is assumed certified by the caller.
pub fn certify_on_subsimplex<S: Scalar>(h: &BaryPoly<S>, degree: u32, target: &str, r_max: u32) -> Result<FejerCertificate> {
    let start = Instant::now();
    if !h.is_homogeneous() {
        return Err(Error::Invalid("certify_on_subsimplex needs a homogeneous polynomial".into()));
    }
    let dim = h.nvars() - 1;
    let g = subsimplex_difference(h);
    let mut cert = FejerCertificate::new(degree, dim, target, Method::Elevation, Status::Certified);
    cert.stats.term_count = g.len();
    let outcome = elevate_until_nonnegative(&g, r_max);
    match outcome {
        Ok((Some(r), _, terms)) => {
            cert.r = Some(r);
            cert.stats.elevated_terms = terms;
        }
        Ok((None, witness, terms)) => {
            cert.stats.elevated_terms = terms;
            cert.status = Status::Inconclusive { max_r: r_max, negative_witness: witness, reason: "negative coefficient persists".into() };
        }
        Err(Error::UndeterminedSign(c)) => {
            cert.status = Status::Inconclusive { max_r: r_max, negative_witness: None, reason: format!("coefficient sign undetermined: {c}") };
        }
        Err(e) => return Err(e),
    }
    cert.stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(cert)
}

/// Barycentres of one face of every dimension (the set is symmetric, so one
/// per size suffices), largest first.
fn witness_candidates(nvars: usize) -> Vec<Vec<crate::scalar::Rational>> {
    (2..=nvars)
        .rev()
        .map(|k| (0..nvars).map(|i| if i < k { rat(1, k as i64) } else { rat(0, 1) }).collect())
        .collect()
}

/// Looks for an exact (or enclosed) value of Σℓ² above one at face
/// barycentres.
pub fn refutation_witness<S: Scalar>(basis: &LagrangeBasis<S>) -> Option<(Vec<String>, String)> {
    for c in witness_candidates(basis.nvars) {
        let x: Vec<S> = c.iter().map(S::from_rational).collect();
        let k = basis.kernel_at(&x);
        if (k.clone() - S::one()).sign() == Some(Sign::Positive) {
            let value = k.exact_string().unwrap_or_else(|| k.render());
            return Some((c.iter().map(crate::scalar::render_rational).collect(), value));
        }
    }
    None
}

fn classical_base(n: u32) -> FejerCertificate {
    let mut c = FejerCertificate::new(n, 1, "sum l^2", Method::Classical, Status::Certified);
    c.assumes.push("Fejér's theorem: the Fekete nodes of an interval satisfy sum l^2 <= 1".into());
    c
}

fn certify_dimension<S: Scalar>(basis: &LagrangeBasis<S>, n: u32, d: usize, r_max: u32) -> Result<FejerCertificate> {
    let start = Instant::now();
    if n == 3 && d == 2 {
        let report = cubic_triangle_decomposition()?;
        let mut c = FejerCertificate::new(3, 2, "sum l^2", Method::Decomposition, Status::Certified);
        c.r = Some(report.r);
        c.stats.term_count = report.bracket_terms;
        c.stats.elevated_terms = report.elevated_terms;
        if !report.identity_holds || !report.all_positive {
            c.status = Status::Inconclusive { max_r: report.r, negative_witness: None, reason: "decomposition check failed".into() };
        }
        c.stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        return Ok(c);
    }
    let h = fejer_defect(basis, n)?;
    let mut c = certify_on_subsimplex(&h, n, "sum l^2", r_max)?;
    if d == 1 && !c.is_certified() {
        c = classical_base(n);
    }
    if !c.is_certified() {
        if let Some((point, value)) = refutation_witness(basis) {
            c.status = Status::Refuted { point, value };
        }
    }
    c.stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(c)
}

fn basis_for(n: u32, d: usize, prec: u32) -> Result<CandidateBasis> {
    Ok(match fekete_candidate(n, d)? {
        CandidateSet::Exact(p) => CandidateBasis::Exact(lagrange_solve(&p, n)?),
        CandidateSet::Numeric(p) => CandidateBasis::Numeric(lagrange_solve(&p.map(|x| x.round_to(prec)), n)?),
    })
}

enum CandidateBasis {
    Exact(LagrangeBasis<AlgebraicScalar>),
    Numeric(LagrangeBasis<Interval>),
}

/// Induction over dimensions 1 … d. Once a dimension fails, higher
/// dimensions only get a witness search.
pub fn certify_fejer(n: u32, d: usize, r_max: u32) -> Result<Vec<FejerCertificate>> {
    certify_fejer_with_precision(n, d, r_max, DEFAULT_PRECISION)
}

pub fn certify_fejer_with_precision(n: u32, d: usize, r_max: u32, prec: u32) -> Result<Vec<FejerCertificate>> {
    if !(1..=5).contains(&n) {
        return Err(Error::UnsupportedDegree(n));
    }
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    let mut out: Vec<FejerCertificate> = Vec::new();
    for k in 1..=d {
        let chain_ok = out.last().is_none_or(FejerCertificate::is_certified);
        let basis = basis_for(n, k, prec)?;
        let cert = if chain_ok {
            match &basis {
                CandidateBasis::Exact(b) => certify_dimension(b, n, k, r_max)?,
                CandidateBasis::Numeric(b) => certify_dimension(b, n, k, r_max)?,
            }
        } else {
            let witness = match &basis {
                CandidateBasis::Exact(b) => refutation_witness(b),
                CandidateBasis::Numeric(b) => refutation_witness(b),
            };
            let status = match witness {
                Some((point, value)) => Status::Refuted { point, value },
                None => Status::Inconclusive {
                    max_r: r_max,
                    negative_witness: None,
                    reason: format!("dimension {} not certified", k - 1),
                },
            };
            FejerCertificate::new(n, k, "sum l^2", Method::Witness, status)
        };
        out.push(cert);
    }
    Ok(out)
}

/// (Σλ)^8 − Σ′ℓ̃², Σ′ omitting the 3-face centroids 256λ_iλ_jλ_kλ_l.
pub fn deg4_partial_defect(d: usize) -> Result<BaryPoly<AlgebraicScalar>> {
    let points = fekete_candidate_exact(4, d)?;
    let basis = lagrange_solve(&points, 4)?;
    let kept = LagrangeBasis {
        degree: 4,
        nvars: basis.nvars,
        polys: basis.polys.iter().zip(points.face_tags()).filter(|(_, t)| t.len() != 4).map(|(p, _)| p.clone()).collect(),
    };
    let k = kernel_k(&kept);
    BaryPoly::linear_sum(d + 1).pow(8).checked_sub(&k)
}

/// The partial-sum certificate for d ≥ 3, together with the bound
/// 256λ₁λ₂λ₃λ₄ ≤ 1 certified the same way.
pub fn certify_deg4_partial_sum(d: usize, r_max: u32) -> Result<(FejerCertificate, FejerCertificate)> {
    if d < 3 {
        return Err(Error::InvalidDimension(d));
    }
    let start = Instant::now();
    let h = deg4_partial_defect(d)?;
    let mut cert = certify_on_subsimplex(&h, 4, "sum l^2 without 3-face centroids", r_max)?;
    cert.assumes.push(format!("the same bound on the facet (dimension {})", d - 1));
    cert.stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((cert, certify_product_bound(r_max)?))
}

/// (Σλ)⁴ − 256λ₁λ₂λ₃λ₄ ≥ 0.
///
/// The zero at the centroid defeats the facet-plus-centroid sub-simplex: the
/// edges leaving the centroid meet at obtuse angles in the Hessian metric,
/// so the coefficients of μ_iμ_jμ₄^k stay negative under every elevation.
/// The chain simplex V₁, (V₁+V₂)/2, (V₁+V₂+V₃)/3, centroid has acute
/// angles there, and its images under the symmetric group tile S₃.
pub fn certify_product_bound(r_max: u32) -> Result<FejerCertificate> {
    let start = Instant::now();
    let p = BaryPoly::<AlgebraicScalar>::linear_sum(4).pow(4);
    let prod = (0..4).fold(BaryPoly::constant(4, AlgebraicScalar::integer(256)), |acc, i| &acc * &BaryPoly::var(4, i));
    let h = chain_simplex_substitution(&(&p - &prod));
    let mut c = FejerCertificate::new(4, 3, "256 l1 l2 l3 l4", Method::Elevation, Status::Certified);
    c.stats.term_count = h.len();
    let (r, witness, terms) = elevate_until_nonnegative(&h, r_max)?;
    c.r = r;
    c.stats.elevated_terms = terms;
    if r.is_none() {
        c.status = Status::Inconclusive { max_r: r_max, negative_witness: witness, reason: "negative coefficient persists".into() };
    }
    c.stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(c)
}

/// λ in terms of the barycentric coordinates μ of the chain simplex whose
/// k-th vertex is the barycentre of V₁ … V_k.
pub fn chain_simplex_substitution<S: Scalar>(h: &BaryPoly<S>) -> BaryPoly<S> {
    let m = h.nvars();
    let images: Vec<BaryPoly<S>> = (0..m)
        .map(|i| {
            let terms = (i..m).map(|k| (crate::polyring::MultiIndex::unit(m, k, 1), S::from_rational(&rat(1, k as i64 + 1))));
            BaryPoly::from_terms(m, terms)
        })
        .collect();
    h.compose(&images)
}

/// (Σλ)^16 − Σℓ̃⁴ for F₄.
pub fn check_fourth_power_bound(n: u32, d: usize, r_max: u32) -> Result<FejerCertificate> {
    if n != 4 {
        return Err(Error::UnsupportedDegree(n));
    }
    if d == 1 {
        let mut c = FejerCertificate::new(4, 1, "sum l^4", Method::Reduction, Status::Certified);
        c.assumes.push("Fejér's theorem on the interval, so |l_i| <= 1 and sum l^4 <= sum l^2 <= 1".into());
        return Ok(c);
    }
    let start = Instant::now();
    let basis = lagrange_solve(&fekete_candidate_exact(4, d)?, 4)?;
    let h = fourth_power_defect(&basis)?;
    let mut c = certify_on_subsimplex(&h, 4, "sum l^4", r_max)?;
    c.assumes.push(format!("the same bound on the facet (dimension {})", d - 1));
    c.stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(c)
}

/// (Σλ)^{4n} − Σℓ̃⁴.
pub fn fourth_power_defect<S: Scalar>(basis: &LagrangeBasis<S>) -> Result<BaryPoly<S>> {
    use rayon::prelude::*;
    let n = basis.degree;
    let fourth: Vec<BaryPoly<S>> = basis
        .polys
        .par_iter()
        .map(|p| {
            let sq = p * p;
            &sq * &sq
        })
        .collect();
    let k = BaryPoly::sum_all(basis.nvars, fourth).homogenize(4 * n)?;
    BaryPoly::linear_sum(basis.nvars).pow(4 * n).checked_sub(&k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointsets::fekete_candidate_exact;
    use crate::scalar::Ring;

    fn defect(n: u32, d: usize) -> BaryPoly<AlgebraicScalar> {
        let b = lagrange_solve(&fekete_candidate_exact(n, d).unwrap(), n).unwrap();
        fejer_defect(&b, n).unwrap()
    }

    #[test]
    fn degree_one_defect_is_pairwise_products() {
        let h = defect(1, 3);
        assert_eq!(h.len(), 6);
        assert!(h.terms().all(|(i, c)| i.support().len() == 2 && *c == AlgebraicScalar::integer(2)));
    }

    #[test]
    fn defect_vanishes_at_nodes() {
        for n in 1..=3 {
            let p = fekete_candidate_exact(n, 2).unwrap();
            let h = defect(n, 2);
            for x in p.points() {
                assert!(Ring::is_zero(&h.eval(&x.coords)));
            }
        }
    }

    #[test]
    fn degree_one_all_dimensions_at_r0() {
        let certs = certify_fejer(1, 5, 4).unwrap();
        for c in &certs {
            assert!(c.is_certified());
            assert_eq!(c.r, Some(0), "{c:?}");
        }
    }

    #[test]
    fn cubic_small_dimensions() {
        let certs = certify_fejer(3, 4, 16).unwrap();
        assert!(certs.iter().all(FejerCertificate::is_certified), "{certs:?}");
        assert!(certs[2].r.unwrap() <= 8);
        assert!(certs[3].r.unwrap() <= 5);
    }

    #[test]
    fn product_bound() {
        let c = certify_product_bound(14).unwrap();
        assert!(c.is_certified(), "{c:?}");
    }

    #[test]
    fn elevation_is_monotone() {
        let g = subsimplex_difference(&defect(2, 3));
        let (r, _, _) = elevate_until_nonnegative(&g, 10).unwrap();
        let r = r.unwrap();
        for extra in 1..=2 {
            assert_eq!(g.degree_elevate(r + extra).min_coefficient_sign().unwrap(), CoefficientSign::AllNonnegative);
        }
    }
}
