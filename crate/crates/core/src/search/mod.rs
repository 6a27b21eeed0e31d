//! Numerical maxima over the simplex, Fejér exponents and the degree-5
//! parameter determinations.
//!
//! Everything here is an empirical search. Maxima are lower bounds found by
//! multistart local ascent and re-evaluated in interval arithmetic at the
//! reported argmax.

mod brute;
mod deg5;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use brute::{brute_force_fekete_deg1, BruteForceReport};
pub use deg5::{
    interior_triangle_diagnostic, optimize_deg5_2face, optimize_deg5_3face, rederive_q_by_resultant, vdm_decoupling_check_deg5,
    DecouplingReport, FaceOptimum, ResultantReport, RootPair, ThreeFaceReport, TriangleDiagnostic, TwoFaceReport,
};

use crate::interp::{lagrange_solve, LagrangeBasis};
use crate::pointsets::{faces, PointSet};
use crate::scalar::{Interval, Rational, Scalar};
use crate::{Error, Result};

/// Multistart settings.
#[derive(Debug, Clone, Serialize)]
pub struct MaxConfig {
    /// Seeded random starts in addition to the face barycentres and the lattice.
    pub random_starts: usize,
    /// Lattice denominator; every point of S_d with coordinates in (1/L)ℤ is a start.
    pub lattice: u32,
    pub seed: u64,
    /// Relative value tolerance of a single ascent.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for MaxConfig {
    fn default() -> Self {
        MaxConfig { random_starts: 200, lattice: 4, seed: 0, tol: 1e-10, max_iter: 2000 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalMax {
    pub value: f64,
    pub point: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplexMaxReport {
    pub value: f64,
    /// Barycentric coordinates, clipped to be nonnegative and summing to 1.
    pub argmax: Vec<f64>,
    pub starts: usize,
    pub iterations: usize,
    pub tolerance: f64,
    /// Distinct local maxima, largest first.
    pub local_maxima: Vec<LocalMax>,
}

/// Euclidean projection onto the probability simplex.
pub fn project_to_simplex(x: &[f64]) -> Vec<f64> {
    let mut s: Vec<f64> = x.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, v) in s.iter().enumerate() {
        cum += v;
        let t = (cum - 1.0) / (k as f64 + 1.0);
        if v - t > 0.0 {
            theta = t;
        }
    }
    x.iter().map(|v| (v - theta).max(0.0)).collect()
}

/// Barycentres of all faces of the simplex with `nvars` vertices.
pub fn face_barycentres(nvars: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for size in 1..=nvars {
        for face in faces(nvars, size) {
            let mut c = vec![0.0; nvars];
            for &i in &face {
                c[i] = 1.0 / size as f64;
            }
            out.push(c);
        }
    }
    out
}

fn lattice_points(nvars: usize, den: u32) -> Vec<Vec<f64>> {
    fn rec(left: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(left - k, slots - 1, cur, out);
            cur.pop();
        }
    }
    if den == 0 {
        return Vec::new();
    }
    let mut raw = Vec::new();
    rec(den, nvars, &mut Vec::new(), &mut raw);
    raw.into_iter().map(|v| v.into_iter().map(|k| k as f64 / den as f64).collect()).collect()
}

/// Uniform random points on the simplex (normalised exponentials).
pub fn random_simplex_points(nvars: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let e: Vec<f64> = (0..nvars).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
            let s: f64 = e.iter().sum();
            e.into_iter().map(|v| v / s).collect()
        })
        .collect()
}

/// Start points: face barycentres, the lattice, then the random points.
pub fn start_points(nvars: usize, cfg: &MaxConfig) -> Vec<Vec<f64>> {
    let mut out = face_barycentres(nvars);
    for p in lattice_points(nvars, cfg.lattice) {
        if !out.iter().any(|q| dist(q, &p) < 1e-12) {
            out.push(p);
        }
    }
    out.extend(random_simplex_points(nvars, cfg.random_starts, cfg.seed));
    out
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Projected gradient ascent from `x0`. The gradient is taken by central
/// differences in the chart that drops the last coordinate.
fn ascend<F: Fn(&[f64]) -> f64>(f: &F, x0: &[f64], cfg: &MaxConfig) -> (f64, Vec<f64>, usize) {
    let m = x0.len();
    let mut x = project_to_simplex(x0);
    let mut fx = f(&x);
    if m == 1 {
        return (fx, x, 0);
    }
    let d = m - 1;
    let h = 1e-6;
    let mut step = 0.05;
    let mut it = 0;
    let mut g = vec![0.0; d];
    let mut fresh = false;
    while it < cfg.max_iter && step > 1e-13 {
        it += 1;
        if !fresh {
            let mut xp = x.clone();
            for k in 0..d {
                xp[k] += h;
                xp[d] -= h;
                let up = f(&xp);
                xp[k] -= 2.0 * h;
                xp[d] += 2.0 * h;
                let down = f(&xp);
                xp[k] = x[k];
                xp[d] = x[d];
                g[k] = (up - down) / (2.0 * h);
            }
            fresh = true;
        }
        let gn = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if gn < 1e-14 {
            break;
        }
        let mut y = x.clone();
        let mut shift = 0.0;
        for k in 0..d {
            let dk = step * g[k] / gn;
            y[k] += dk;
            shift += dk;
        }
        y[d] -= shift;
        let y = project_to_simplex(&y);
        let fy = f(&y);
        if fy > fx {
            let gain = fy - fx;
            let moved = dist(&x, &y);
            x = y;
            fx = fy;
            fresh = false;
            step = (step * 2.0).min(0.25);
            if gain <= cfg.tol * fx.abs().max(1.0) * 1e-3 && moved < 1e-10 {
                break;
            }
        } else {
            step *= 0.5;
        }
    }
    (fx, x, it)
}

/// Ascends from every start and reduces to the best value; ties keep the
/// earliest start so the result does not depend on scheduling.
pub fn max_from_starts<F: Fn(&[f64]) -> f64 + Sync>(f: &F, starts: &[Vec<f64>], cfg: &MaxConfig) -> SimplexMaxReport {
    let runs: Vec<(f64, Vec<f64>, usize)> = starts.par_iter().map(|s| ascend(f, s, cfg)).collect();
    let iterations = runs.iter().map(|r| r.2).sum();
    let mut order: Vec<usize> = (0..runs.len()).collect();
    order.sort_by(|&a, &b| runs[b].0.total_cmp(&runs[a].0).then(a.cmp(&b)));
    let mut local_maxima: Vec<LocalMax> = Vec::new();
    for &i in &order {
        let (v, p, _) = &runs[i];
        if !local_maxima.iter().any(|l| dist(&l.point, p) < 1e-5) {
            local_maxima.push(LocalMax { value: *v, point: p.clone() });
        }
    }
    let best = local_maxima.first().cloned().unwrap_or(LocalMax { value: f64::NEG_INFINITY, point: Vec::new() });
    SimplexMaxReport {
        value: best.value,
        argmax: best.point,
        starts: starts.len(),
        iterations,
        tolerance: cfg.tol,
        local_maxima,
    }
}

/// Maximum of `f` over S_d by multistart projected ascent.
pub fn max_over_simplex<F: Fn(&[f64]) -> f64 + Sync>(f: &F, d: usize, cfg: &MaxConfig) -> SimplexMaxReport {
    max_from_starts(f, &start_points(d + 1, cfg), cfg)
}

/// A Lagrange basis with f64 coefficients, evaluated through one shared
/// monomial vector.
#[derive(Debug, Clone)]
pub struct NumericBasis {
    pub nvars: usize,
    pub degree: u32,
    monomials: Vec<Vec<u32>>,
    /// Row i holds the coefficients of ℓ_i against `monomials`.
    coeffs: Vec<f64>,
}

impl NumericBasis {
    pub fn new<S: Scalar>(basis: &LagrangeBasis<S>) -> Self {
        let monomials: Vec<Vec<u32>> = crate::interp::monomial_basis(basis.nvars, basis.degree).iter().map(|a| a.exps().to_vec()).collect();
        let index: std::collections::HashMap<&[u32], usize> = monomials.iter().enumerate().map(|(j, m)| (m.as_slice(), j)).collect();
        let m = monomials.len();
        let mut coeffs = vec![0.0; basis.len() * m];
        for (i, p) in basis.polys.iter().enumerate() {
            for (alpha, c) in p.terms() {
                coeffs[i * m + index[alpha.exps()]] = c.to_f64();
            }
        }
        NumericBasis { nvars: basis.nvars, degree: basis.degree, monomials, coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len() / self.monomials.len().max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn monomial_values(&self, x: &[f64]) -> Vec<f64> {
        let n = self.degree as usize;
        let pw: Vec<Vec<f64>> = x
            .iter()
            .map(|&v| {
                let mut p = vec![1.0; n + 1];
                for k in 1..=n {
                    p[k] = p[k - 1] * v;
                }
                p
            })
            .collect();
        self.monomials.iter().map(|e| e.iter().enumerate().map(|(i, &k)| pw[i][k as usize]).product()).collect()
    }

    /// ℓ_i(x) for all i.
    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        let mv = self.monomial_values(x);
        self.coeffs.chunks(mv.len()).map(|row| row.iter().zip(&mv).map(|(a, b)| a * b).sum()).collect()
    }

    /// Σ|ℓ_i(x)|^r, with 0^r = 0.
    pub fn power_sum(&self, x: &[f64], r: f64) -> f64 {
        if r == 2.0 {
            return self.eval(x).iter().map(|v| v * v).sum();
        }
        self.eval(x).iter().map(|v| if *v == 0.0 { 0.0 } else { v.abs().powf(r) }).sum()
    }

    /// max_i |ℓ_i(x)|.
    pub fn sup(&self, x: &[f64]) -> f64 {
        self.eval(x).iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Maximum of Σℓ² with an interval re-evaluation at the argmax.
#[derive(Debug, Clone, Serialize)]
pub struct KernelMaxReport {
    pub degree: u32,
    pub dim: usize,
    pub count: usize,
    pub search: SimplexMaxReport,
    /// Σℓ² at the argmax in interval arithmetic.
    pub value_enclosure: String,
    /// Lower end of the enclosure, a rigorous lower bound for the maximum.
    pub lower_bound: f64,
    pub precision_bits: u32,
    /// The search found nothing above 1 + 1e-9.
    pub fejer_numeric: bool,
}

/// A rational point of the simplex close to an f64 barycentric vector.
pub fn rational_point(x: &[f64]) -> Vec<Rational> {
    let clipped: Vec<Rational> = x.iter().map(|v| Rational::from_float(v.max(0.0)).unwrap_or_else(|| Rational::from_integer(0.into()))).collect();
    let total: Rational = clipped.iter().fold(Rational::from_integer(0.into()), |a, b| a + b);
    clipped.into_iter().map(|c| c / total.clone()).collect()
}

/// Σℓ_i² of an exact or interval basis at an f64 point, in intervals.
pub fn kernel_enclosure<S: Scalar>(basis: &LagrangeBasis<S>, x: &[f64], prec: u32) -> Interval {
    let iv = basis.map(|c| c.to_interval(prec));
    let pt: Vec<Interval> = rational_point(x).iter().map(|q| Interval::from_rational_prec(q, prec)).collect();
    iv.kernel_at(&pt)
}

fn sum_squares_max<S: Scalar>(basis: &LagrangeBasis<S>, d: usize, cfg: &MaxConfig, prec: u32) -> KernelMaxReport {
    let nb = NumericBasis::new(basis);
    let search = max_over_simplex(&|x: &[f64]| nb.power_sum(x, 2.0), d, cfg);
    let enc = kernel_enclosure(basis, &search.argmax, prec);
    KernelMaxReport {
        degree: basis.degree,
        dim: d,
        count: basis.len(),
        fejer_numeric: search.value <= 1.0 + 1e-9,
        value_enclosure: enc.render_decimal(),
        lower_bound: enc.lo().to_f64(),
        precision_bits: prec,
        search,
    }
}

/// max over S_d of Σℓ_i² for a point set.
pub fn kernel_max<S: Scalar>(points: &PointSet<S>, n: u32, cfg: &MaxConfig, prec: u32) -> Result<KernelMaxReport> {
    let basis = lagrange_solve(points, n)?;
    Ok(sum_squares_max(&basis, points.dim(), cfg, prec))
}

#[derive(Debug, Clone)]
pub struct ExponentConfig {
    /// Bracket width in r.
    pub tol: f64,
    /// g(r) ≤ value_tol counts as ‖ℓ‖_r ≤ 1.
    pub value_tol: f64,
    /// Largest r tried before giving up.
    pub r_cap: f64,
    pub search: MaxConfig,
}

impl Default for ExponentConfig {
    fn default() -> Self {
        ExponentConfig { tol: 1e-6, value_tol: 1e-9, r_cap: 64.0, search: MaxConfig::default() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExponentSample {
    pub r: f64,
    /// max_x Σ|ℓ_i(x)|^r.
    pub max: f64,
    pub argmax: Vec<f64>,
    /// Whether the full multistart was used, rather than the pool of known maxima.
    pub full_search: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FejerExponentResult {
    pub degree: u32,
    pub dim: usize,
    /// Upper end of the bracket; `None` when even r_cap fails.
    pub r: Option<f64>,
    pub r_lo: f64,
    pub r_hi: Option<f64>,
    /// max_x ‖ℓ(x)‖_∞.
    pub sup_norm: f64,
    pub sup_argmax: Vec<f64>,
    pub samples: Vec<ExponentSample>,
}

struct ExponentSearch<'a> {
    nb: &'a NumericBasis,
    cfg: &'a ExponentConfig,
    pool: Vec<Vec<f64>>,
    samples: Vec<ExponentSample>,
}

impl ExponentSearch<'_> {
    fn run(&mut self, r: f64, full: bool) -> f64 {
        let nb = self.nb;
        let f = |x: &[f64]| nb.power_sum(x, r);
        let mut starts = self.pool.clone();
        if full {
            starts.extend(start_points(nb.nvars, &self.cfg.search));
        }
        let rep = max_from_starts(&f, &starts, &self.cfg.search);
        for lm in rep.local_maxima.iter().take(32) {
            if !self.pool.iter().any(|p| dist(p, &lm.point) < 1e-5) {
                self.pool.push(lm.point.clone());
            }
        }
        self.samples.push(ExponentSample { r, max: rep.value, argmax: rep.argmax, full_search: full });
        rep.value - 1.0
    }
}

/// Fejér exponent of a point set: the least r with max_x ‖ℓ(x)‖_r ≤ 1.
///
/// Bisection runs on the pool of local maxima found so far; every claimed
/// upper end is confirmed by a full multistart before it is accepted.
pub fn fejer_exponent<S: Scalar>(points: &PointSet<S>, n: u32, cfg: &ExponentConfig) -> Result<FejerExponentResult> {
    let basis = lagrange_solve(points, n)?;
    fejer_exponent_of_basis(&basis, points.dim(), cfg)
}

pub fn fejer_exponent_of_basis<S: Scalar>(basis: &LagrangeBasis<S>, dim: usize, cfg: &ExponentConfig) -> Result<FejerExponentResult> {
    let nb = NumericBasis::new(basis);
    let sup = max_over_simplex(&|x: &[f64]| nb.sup(x), dim, &cfg.search);
    if sup.value > 1.0 + cfg.value_tol {
        return Err(Error::UndefinedExponent(sup.value));
    }
    let mut s = ExponentSearch { nb: &nb, cfg, pool: face_barycentres(nb.nvars), samples: Vec::new() };
    for lm in sup.local_maxima.iter().take(32) {
        s.pool.push(lm.point.clone());
    }
    let done = |s: ExponentSearch, r: Option<f64>, lo: f64, hi: Option<f64>| FejerExponentResult {
        degree: basis.degree,
        dim,
        r,
        r_lo: lo,
        r_hi: hi,
        sup_norm: sup.value,
        sup_argmax: sup.argmax.clone(),
        samples: s.samples,
    };
    if s.run(2.0, true) <= cfg.value_tol {
        return Ok(done(s, Some(2.0), 2.0, Some(2.0)));
    }
    let mut lo = 2.0;
    loop {
        // smallest confirmed upper end above lo
        let mut hi = None;
        let mut r = (lo * 2.0_f64).min(cfg.r_cap).max(lo + cfg.tol);
        while r <= cfg.r_cap {
            if s.run(r, false) <= cfg.value_tol {
                hi = Some(r);
                break;
            }
            lo = r;
            if r >= cfg.r_cap {
                break;
            }
            r = (r * 2.0).min(cfg.r_cap);
        }
        let Some(mut hi) = hi else {
            return Ok(done(s, None, lo, None));
        };
        while hi - lo > cfg.tol {
            let mid = 0.5 * (lo + hi);
            if s.run(mid, false) <= cfg.value_tol {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if s.run(hi, true) <= cfg.value_tol {
            return Ok(done(s, Some(hi), lo, Some(hi)));
        }
        lo = hi;
    }
}

/// Maximum of a power sum Σ|ℓ_i|^r for a fixed r.
pub fn power_sum_max<S: Scalar>(basis: &LagrangeBasis<S>, dim: usize, r: f64, cfg: &MaxConfig) -> SimplexMaxReport {
    let nb = NumericBasis::new(basis);
    max_over_simplex(&|x: &[f64]| nb.power_sum(x, r), dim, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointsets::fekete_candidate_exact;

    #[test]
    fn projection_lands_on_simplex() {
        let p = project_to_simplex(&[0.7, 0.6, -0.2]);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(p.iter().all(|v| *v >= 0.0));
        assert_eq!(project_to_simplex(&[0.2, 0.3, 0.5]), vec![0.2, 0.3, 0.5]);
    }

    #[test]
    fn am_gm_product() {
        let cfg = MaxConfig { random_starts: 20, ..Default::default() };
        let rep = max_over_simplex(&|x: &[f64]| 256.0 * x.iter().product::<f64>(), 3, &cfg);
        assert!((rep.value - 1.0).abs() < 1e-9, "{}", rep.value);
        assert!(rep.argmax.iter().all(|v| (v - 0.25).abs() < 1e-4));
    }

    #[test]
    fn starts_are_deterministic() {
        let cfg = MaxConfig::default();
        assert_eq!(start_points(4, &cfg), start_points(4, &cfg));
        // 7 barycentres, 15 lattice points of which 6 repeat them, 200 random
        assert_eq!(start_points(3, &cfg).len(), 7 + 9 + 200);
    }

    #[test]
    fn f2_is_fejer() {
        let p = fekete_candidate_exact(2, 3).unwrap();
        let cfg = MaxConfig { random_starts: 30, ..Default::default() };
        let rep = kernel_max(&p, 2, &cfg, 128).unwrap();
        assert!(rep.fejer_numeric);
        assert!((rep.search.value - 1.0).abs() < 1e-9);
        let ecfg = ExponentConfig { search: cfg, ..Default::default() };
        let e = fejer_exponent(&p, 2, &ecfg).unwrap();
        assert_eq!(e.r, Some(2.0));
    }

    #[test]
    fn midpoints_have_no_finite_exponent() {
        // at a vertex the three Lagrange values are 1, 1, −1
        let p = crate::pointsets::edge_midpoints(2);
        let cfg = ExponentConfig { search: MaxConfig { random_starts: 10, ..Default::default() }, ..Default::default() };
        let e = fejer_exponent(&p, 1, &cfg).unwrap();
        assert!(e.r.is_none() && (e.sup_norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn interior_point_makes_exponent_undefined() {
        use crate::scalar::{rat, AlgebraicScalar};
        let v = crate::pointsets::vertices(2);
        let third = AlgebraicScalar::rational(rat(1, 3));
        let p = v.with_point(0, crate::pointsets::BaryPoint::new(vec![third.clone(), third.clone(), third]), vec![0, 1, 2]);
        let cfg = ExponentConfig { search: MaxConfig { random_starts: 10, ..Default::default() }, ..Default::default() };
        assert!(matches!(fejer_exponent(&p, 1, &cfg), Err(Error::UndefinedExponent(v)) if v > 2.9));
    }
}
