//! Vandermonde matrices, Lagrange bases, the kernel Σℓ² and the
//! optimal-design checks.
//!
//! The polynomial basis is fixed to the homogeneous barycentric monomials of
//! degree n. On the simplex these span all polynomials of degree ≤ n, and a
//! Lagrange polynomial expressed in them is automatically homogeneous.

mod closed_form;
mod design;

use serde::Serialize;

pub use closed_form::{lagrange_closed_form, ClosedForm, Discrepancy};
pub use design::{g_optimality_check, GOptimalityReport, Violation};

use crate::linalg::{bareiss_det, lu_det, sparse_inverse, Matrix};
use crate::pointsets::PointSet;
use crate::polyring::{BaryPoly, MultiIndex};
use crate::scalar::{AlgebraicScalar, Interval, Ring, Scalar};
use crate::{Error, Result};

/// Degree-n monomials in `nvars` variables, descending graded-lex.
pub fn monomial_basis(nvars: usize, n: u32) -> Vec<MultiIndex> {
    MultiIndex::all_of_degree(nvars, n)
}

/// Powers x^0 … x^n of every coordinate, for repeated monomial evaluation.
fn power_table<S: Ring>(coords: &[S], n: u32) -> Vec<Vec<S>> {
    coords
        .iter()
        .map(|x| {
            let mut p = vec![S::one()];
            for k in 1..=n as usize {
                let next = p[k - 1].mul_ref(x);
                p.push(next);
            }
            p
        })
        .collect()
}

fn eval_monomial<S: Ring>(alpha: &MultiIndex, powers: &[Vec<S>]) -> S {
    let mut v = S::one();
    for (i, &e) in alpha.exps().iter().enumerate() {
        if e > 0 {
            if powers[i][1].is_zero() {
                return S::zero();
            }
            v *= &powers[i][e as usize];
        }
    }
    v
}

/// Rows are points, columns are basis monomials.
#[derive(Clone, Debug)]
pub struct VandermondeMatrix<S> {
    pub basis: Vec<MultiIndex>,
    pub entries: Matrix<S>,
}

impl<S: Scalar> VandermondeMatrix<S> {
    pub fn new(points: &PointSet<S>, n: u32) -> Self {
        let basis = monomial_basis(points.nvars(), n);
        let entries = points
            .points()
            .iter()
            .map(|p| {
                let pw = power_table(&p.coords, n);
                basis.iter().map(|a| eval_monomial(a, &pw)).collect()
            })
            .collect();
        VandermondeMatrix { basis, entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_square(&self) -> bool {
        self.entries.len() == self.basis.len()
    }
}

fn check_count<S: Scalar>(points: &PointSet<S>, n: u32) -> Result<()> {
    let expected = crate::pointsets::cardinality(n, points.dim()) as usize;
    if points.len() != expected {
        return Err(Error::Cardinality { expected, found: points.len() });
    }
    Ok(())
}

/// Exact Vandermonde determinant by fraction-free elimination; zero for a
/// non-unisolvent set.
pub fn vdm_det(points: &PointSet<AlgebraicScalar>, n: u32) -> Result<AlgebraicScalar> {
    check_count(points, n)?;
    let v = VandermondeMatrix::new(points, n);
    Ok(bareiss_det(&v.entries))
}

/// Determinant through sparse Gauss–Jordan; the fast route for large exact
/// sets and the only route for intervals besides LU.
pub fn vdm_det_sparse<S: Scalar>(points: &PointSet<S>, n: u32) -> Result<S> {
    check_count(points, n)?;
    let v = VandermondeMatrix::new(points, n);
    Ok(sparse_inverse(&v.entries)?.det)
}

/// Interval Vandermonde determinant by LU with partial pivoting.
pub fn vdm_det_interval(points: &PointSet<Interval>, n: u32) -> Result<Interval> {
    check_count(points, n)?;
    let v = VandermondeMatrix::new(points, n);
    lu_det(&v.entries)
}

/// Lagrange polynomials aligned with a point list, each homogeneous of the
/// interpolation degree.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangeBasis<S: Ring> {
    pub degree: u32,
    pub nvars: usize,
    pub polys: Vec<BaryPoly<S>>,
}

impl<S: Scalar> LagrangeBasis<S> {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// ℓ_i(x) for all i.
    pub fn eval_all(&self, x: &[S]) -> Vec<S> {
        self.polys.iter().map(|p| p.eval(x)).collect()
    }

    /// Σ ℓ_i(x)².
    pub fn kernel_at(&self, x: &[S]) -> S {
        let mut acc = S::zero();
        for v in self.eval_all(x) {
            acc += &v.mul_ref(&v);
        }
        acc
    }

    /// Largest |ℓ_i(x_j) − δ_ij|, exactly zero for exact bases.
    pub fn delta_defects(&self, points: &PointSet<S>) -> Vec<(usize, usize, S)> {
        let mut bad = Vec::new();
        for (j, p) in points.points().iter().enumerate() {
            for (i, v) in self.eval_all(&p.coords).into_iter().enumerate() {
                let target = if i == j { S::one() } else { S::zero() };
                let diff = v - target;
                if !matches!(diff.sign(), Some(crate::scalar::Sign::Zero) | None) {
                    bad.push((i, j, diff));
                }
            }
        }
        bad
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> LagrangeBasis<T> {
        LagrangeBasis { degree: self.degree, nvars: self.nvars, polys: self.polys.iter().map(|p| p.map_coeffs(f)).collect() }
    }

    pub fn to_f64(&self) -> LagrangeBasis<f64> {
        self.map(|c| c.to_f64())
    }
}

/// Solves Vℓ = δ through sparse Gauss–Jordan: ℓ_i is column i of V⁻¹ read
/// against the monomial basis.
pub fn lagrange_solve<S: Scalar>(points: &PointSet<S>, n: u32) -> Result<LagrangeBasis<S>> {
    check_count(points, n)?;
    let v = VandermondeMatrix::new(points, n);
    let inv = sparse_inverse(&v.entries)?;
    if inv.det.is_zero() {
        return Err(Error::NotUnisolvent(n));
    }
    let nvars = points.nvars();
    let size = v.size();
    let mut polys: Vec<Vec<(MultiIndex, S)>> = vec![Vec::new(); size];
    for (j, row) in inv.rows.iter().enumerate() {
        for (&i, c) in row {
            polys[i].push((v.basis[j].clone(), c.clone()));
        }
    }
    Ok(LagrangeBasis {
        degree: n,
        nvars,
        polys: polys.into_iter().map(|t| BaryPoly::from_terms(nvars, t)).collect(),
    })
}

/// Σ ℓ_i², homogeneous of degree 2n.
pub fn kernel_k<S: Scalar>(basis: &LagrangeBasis<S>) -> BaryPoly<S> {
    use rayon::prelude::*;
    let squares: Vec<BaryPoly<S>> = basis.polys.par_iter().map(|p| p * p).collect();
    BaryPoly::sum_all(basis.nvars, squares)
}

/// N · Σ ℓ_i², the reproducing kernel of the equally weighted design.
pub fn kernel_g<S: Scalar>(basis: &LagrangeBasis<S>) -> BaryPoly<S> {
    kernel_k(basis).scale(&S::from_int(basis.len() as i64))
}

/// Checks that Σℓ_i equals (Σλ)^n identically.
pub fn partition_of_unity<S: Scalar>(basis: &LagrangeBasis<S>) -> bool {
    let sum = BaryPoly::sum_all(basis.nvars, basis.polys.iter().cloned());
    let target = BaryPoly::<S>::linear_sum(basis.nvars).pow(basis.degree);
    sum.checked_sub(&target).map(|d| d.terms().all(|(_, c)| matches!(c.sign(), Some(crate::scalar::Sign::Zero) | None))).unwrap_or(false)
}

/// Monomial → coefficient export of a basis.
#[derive(Debug, Clone, Serialize)]
pub struct LagrangeExport {
    pub degree: u32,
    pub nvars: usize,
    pub polys: Vec<Vec<(Vec<u32>, String)>>,
}

impl<S: Scalar> LagrangeBasis<S> {
    pub fn export(&self) -> LagrangeExport {
        LagrangeExport {
            degree: self.degree,
            nvars: self.nvars,
            polys: self
                .polys
                .iter()
                .map(|p| p.terms().collect::<Vec<_>>().into_iter().rev().map(|(i, c)| (i.exps().to_vec(), c.exact_string().unwrap_or_else(|| c.render()))).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointsets::{edge_midpoints, fekete_candidate_exact, vertices};

    #[test]
    fn midpoint_vertex_ratio() {
        let a = vdm_det(&vertices(2), 1).unwrap();
        let b = vdm_det(&edge_midpoints(2), 1).unwrap();
        let ratio = b.checked_inv().unwrap() * a;
        assert_eq!(ratio.clone() * ratio, AlgebraicScalar::integer(16));
    }

    #[test]
    fn f1_basis_is_lambda() {
        let p = fekete_candidate_exact(1, 3).unwrap();
        let b = lagrange_solve(&p, 1).unwrap();
        for (i, l) in b.polys.iter().enumerate() {
            assert_eq!(*l, BaryPoly::var(4, i));
        }
    }

    #[test]
    fn f2_vertex_and_midpoint() {
        let p = fekete_candidate_exact(2, 2).unwrap();
        let b = lagrange_solve(&p, 2).unwrap();
        let l0 = BaryPoly::<AlgebraicScalar>::var(3, 0);
        let p1 = BaryPoly::linear_sum(3);
        let expected = &l0 * &(&l0.scale(&AlgebraicScalar::integer(2)) - &p1);
        assert_eq!(b.polys[0], expected);
        let mid = (&BaryPoly::var(3, 0) * &BaryPoly::var(3, 1)).scale(&AlgebraicScalar::integer(4));
        assert_eq!(b.polys[3], mid);
        assert!(partition_of_unity(&b));
        assert!(b.delta_defects(&p).is_empty());
    }

    #[test]
    fn bareiss_matches_sparse() {
        for n in 1..=3 {
            let p = fekete_candidate_exact(n, 2).unwrap();
            assert_eq!(vdm_det(&p, n).unwrap(), vdm_det_sparse(&p, n).unwrap());
        }
    }

    #[test]
    fn repeated_point_is_singular() {
        let p = vertices(2);
        let q = p.with_point(1, p.points()[0].clone(), vec![0]);
        assert!(Ring::is_zero(&vdm_det(&q, 1).unwrap()));
        assert!(matches!(lagrange_solve(&q, 1), Err(Error::NotUnisolvent(1))));
    }
}
