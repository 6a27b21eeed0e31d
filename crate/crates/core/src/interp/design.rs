//! Equal-weight optimal-design checks on a unisolvent set.
//!
//! With weights 1/N on the N nodes the information matrix is M = VᵀV/N and
//! its variance function is d(x) = N·Σℓ_i(x)². By the equivalence theorem
//! the design is G-optimal exactly when d ≤ N on the simplex, i.e. when
//! Σℓ_i² ≤ 1 there.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{lagrange_solve, VandermondeMatrix};
use crate::linalg::{gram, lu_det};
use crate::pointsets::{faces, PointSet};
use crate::scalar::{Rational, Scalar, Sign};
use crate::Result;

/// A sample where d(x) exceeds N.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub point: Vec<f64>,
    /// Σℓ_i² at the sample.
    pub kernel: f64,
    pub source: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GOptimalityReport {
    pub degree: u32,
    pub dim: usize,
    pub count: usize,
    pub convention: String,
    /// det(M)·N^N equals det(V)².
    pub determinant_identity: bool,
    /// d(x_j) = N at every node.
    pub node_values_ok: bool,
    pub samples: usize,
    /// Largest Σℓ_i² seen over the samples.
    pub max_kernel: f64,
    pub max_at: Vec<f64>,
    pub violations: Vec<Violation>,
}

impl GOptimalityReport {
    /// No violations were found and both identities hold.
    pub fn passes(&self) -> bool {
        self.determinant_identity && self.node_values_ok && self.violations.is_empty()
    }
}

fn not_positive<S: Scalar>(x: &S) -> bool {
    !matches!(x.sign(), Some(Sign::Positive))
}

fn vanishes<S: Scalar>(x: &S) -> bool {
    matches!(x.sign(), Some(Sign::Zero) | None)
}

/// Random rational points with denominators up to `den`.
fn random_points(nvars: usize, count: usize, seed: u64, den: i64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut w: Vec<i64> = (0..nvars).map(|_| rng.gen_range(0..=den)).collect();
            if w.iter().all(|&x| x == 0) {
                w = vec![1; nvars];
            }
            let total: i64 = w.iter().sum();
            w.into_iter().map(|x| Rational::new(x.into(), total.into())).collect()
        })
        .collect()
}

/// Samples d(x) = N·Σℓ² at every face barycentre and at `random` seeded
/// rational points, and checks the determinant and node identities.
pub fn g_optimality_check<S: Scalar>(points: &PointSet<S>, n: u32, random: usize, seed: u64) -> Result<GOptimalityReport> {
    let basis = lagrange_solve(points, n)?;
    let size = points.len();
    let nvars = points.nvars();
    let big_n = S::from_int(size as i64);

    let v = VandermondeMatrix::new(points, n);
    let det_v = lu_det(&v.entries)?;
    let inv_n = big_n.inv()?;
    let m: Vec<Vec<S>> = gram(&v.entries).into_iter().map(|r| r.into_iter().map(|x| x * inv_n.clone()).collect()).collect();
    let det_m = lu_det(&m)?;
    let mut scaled = det_m;
    for _ in 0..size {
        scaled *= &big_n;
    }
    let determinant_identity = vanishes(&(scaled - det_v.mul_ref(&det_v)));

    let node_values_ok = points.points().iter().all(|p| vanishes(&(basis.kernel_at(&p.coords) - S::one())));

    let mut samples: Vec<(Vec<Rational>, String)> = Vec::new();
    for size in 1..=nvars {
        for face in faces(nvars, size) {
            let mut c = vec![Rational::from_integer(0.into()); nvars];
            for &i in &face {
                c[i] = Rational::new(1.into(), (size as i64).into());
            }
            samples.push((c, format!("barycentre of face {face:?}")));
        }
    }
    for c in random_points(nvars, random, seed, 24) {
        samples.push((c, "random".into()));
    }

    let mut max_kernel = f64::NEG_INFINITY;
    let mut max_at = Vec::new();
    let mut violations = Vec::new();
    let one = S::one();
    for (c, source) in &samples {
        let x: Vec<S> = c.iter().map(S::from_rational).collect();
        let k = basis.kernel_at(&x);
        let kf = k.to_f64();
        let as_f64: Vec<f64> = x.iter().map(|v| v.to_f64()).collect();
        if kf > max_kernel {
            max_kernel = kf;
            max_at = as_f64.clone();
        }
        if !not_positive(&(k - one.clone())) {
            violations.push(Violation { point: as_f64, kernel: kf, source: source.clone() });
        }
    }

    Ok(GOptimalityReport {
        degree: n,
        dim: points.dim(),
        count: size,
        convention: "d(x) = N * sum l_i(x)^2 with M = V^T V / N; G-optimal iff d <= N, i.e. sum l_i^2 <= 1".into(),
        determinant_identity,
        node_values_ok,
        samples: samples.len(),
        max_kernel,
        max_at,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointsets::{edge_midpoints, fekete_candidate_exact};

    #[test]
    fn low_degree_sets_pass() {
        for n in 1..=3 {
            let p = fekete_candidate_exact(n, 2).unwrap();
            let r = g_optimality_check(&p, n, 40, 7).unwrap();
            assert!(r.passes(), "n={n}: {r:?}");
        }
    }

    #[test]
    fn midpoints_fail_for_degree_one() {
        let r = g_optimality_check(&edge_midpoints(2), 1, 10, 1).unwrap();
        assert!(r.determinant_identity && r.node_values_ok);
        assert!(!r.violations.is_empty());
    }
}
