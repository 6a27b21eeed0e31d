//! Closed-form identities for degree two and the degree-three triangle.

use serde::Serialize;

use super::elevate_until_nonnegative;
use crate::interp::lagrange_solve;
use crate::pointsets::{faces, fekete_candidate_exact};
use crate::polyring::{BaryPoly, CoefficientSign, MultiIndex};
use crate::scalar::{rat, AlgebraicScalar};
use crate::Result;

type Poly = BaryPoly<AlgebraicScalar>;

fn k(n: i64) -> AlgebraicScalar {
    AlgebraicScalar::integer(n)
}

fn defect(n: u32, d: usize) -> Result<Poly> {
    let b = lagrange_solve(&fekete_candidate_exact(n, d)?, n)?;
    super::fejer_defect(&b, n)
}

/// p₁⁴ + 4p₄ + 4p₁p₃ − p₁²p₂ − 8p₂² equals the homogenised degree-2 defect.
pub fn deg2_power_sum_form(d: usize) -> Result<bool> {
    let m = d + 1;
    let p = |r| Poly::power_sum(r, m);
    let (p1, p2, p3, p4) = (p(1), p(2), p(3), p(4));
    let expr = Poly::sum_all(
        m,
        [
            p1.pow(4),
            p4.scale(&k(4)),
            (&p1 * &p3).scale(&k(4)),
            -(&(&p1 * &p1) * &p2),
            (&p2 * &p2).scale(&k(-8)),
        ],
    );
    Ok(expr == defect(2, d)?)
}

/// 6Σλ_jλ_k(λ_j−λ_k)² + 10Σλ_iλ_jλ_k(λ_i+λ_j+λ_k) + 24Σλ_iλ_jλ_kλ_m
/// equals the degree-2 defect.
pub fn deg2_decomposition(d: usize) -> Result<bool> {
    let m = d + 1;
    let lam = |i| Poly::var(m, i);
    let prod = |f: &[usize]| f.iter().fold(Poly::one(m), |acc, &i| &acc * &lam(i));
    let mut parts = Vec::new();
    for f in faces(m, 2) {
        let diff = &lam(f[0]) - &lam(f[1]);
        parts.push((&prod(&f) * &(&diff * &diff)).scale(&k(6)));
    }
    for f in faces(m, 3) {
        let s = Poly::sum_all(m, f.iter().map(|&i| lam(i)));
        parts.push((&prod(&f) * &s).scale(&k(10)));
    }
    for f in faces(m, 4) {
        parts.push(prod(&f).scale(&k(24)));
    }
    Ok(Poly::sum_all(m, parts) == defect(2, d)?)
}

/// Outcome of the degree-three decomposition on the triangle.
#[derive(Debug, Clone, Serialize)]
pub struct CubicTriangleReport {
    /// H = 262/81(u²−uv+v²)w⁴ + 12uv(u²−3uv+v²)² + (2w/27)E with the
    /// printed bracket E.
    pub identity_holds: bool,
    /// First r with (u+v+w)^r E free of negative coefficients.
    pub r: u32,
    /// Every stored coefficient of (u+v+w)^r E is strictly positive.
    pub all_positive: bool,
    /// (u+v+w)⁴E equals the printed expansion.
    pub elevated_matches_printed: bool,
    pub bracket_terms: usize,
    pub elevated_terms: usize,
}

/// Rows of coefficients by w-exponent, u-exponent ascending, total degree
/// `deg`.
fn from_rows(deg: u32, rows: &[(u32, &[i64])]) -> Poly {
    let mut terms = Vec::new();
    for &(we, coeffs) in rows {
        for (ue, &c) in coeffs.iter().enumerate() {
            let ue = ue as u32;
            terms.push((MultiIndex::new(vec![ue, deg - we - ue, we]), k(c)));
        }
    }
    Poly::from_terms(3, terms)
}

fn printed_bracket() -> Poly {
    from_rows(5, &[(2, &[104, 106, 106, 104]), (1, &[-27, 522, 405, 522, -27]), (0, &[108, -351, 1062, 1062, -351, 108])])
}

fn printed_elevated_bracket() -> Poly {
    from_rows(
        9,
        &[
            (6, &[104, 106, 106, 104]),
            (5, &[389, 1362, 1253, 1362, 389]),
            (4, &[624, 3513, 7302, 7302, 3513, 624]),
            (3, &[686, 3508, 14320, 22996, 14320, 3508, 686]),
            (2, &[644, 1476, 11522, 31694, 31694, 11522, 1476, 644]),
            (1, &[405, 306, 3663, 18378, 29232, 18378, 3663, 306, 405]),
            (0, &[108, 81, 306, 3636, 8973, 8973, 3636, 306, 81, 108]),
        ],
    )
}

/// The degree-three defect on the sub-triangle V₁, V₂, centroid, checked
/// against its decomposition, with the bracket elevated until positive.
pub fn cubic_triangle_decomposition() -> Result<CubicTriangleReport> {
    let h = defect(3, 2)?.substitute_subsimplex();
    let (u, v, w) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
    let q = |a: i64, b: i64| Poly::constant(3, AlgebraicScalar::rational(rat(a, b)));
    let uu = &u * &u;
    let vv = &v * &v;
    let uv = &u * &v;
    let w2 = &w * &w;
    let first = &(&(&uu - &uv) + &vv) * &(&q(262, 81) * &(&w2 * &w2));
    let inner = &(&uu - &uv.scale(&k(3))) + &vv;
    let second = &(&uv * &(&inner * &inner)) * &q(12, 1);
    let e = printed_bracket();
    let third = &(&w * &q(2, 27)) * &e;
    let identity_holds = h == Poly::sum_all(3, [first, second, third]);

    let (r, _, elevated_terms) = elevate_until_nonnegative(&e, 16)?;
    let r = r.unwrap_or(16);
    let elevated = e.degree_elevate(r);
    let all_positive = elevated.min_coefficient_sign()? == CoefficientSign::AllNonnegative;
    Ok(CubicTriangleReport {
        identity_holds,
        r,
        all_positive,
        elevated_matches_printed: e.degree_elevate(4) == printed_elevated_bracket(),
        bracket_terms: e.len(),
        elevated_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two_identities() {
        for d in 2..=4 {
            assert!(deg2_power_sum_form(d).unwrap());
            assert!(deg2_decomposition(d).unwrap());
        }
    }

    #[test]
    fn cubic_triangle() {
        let r = cubic_triangle_decomposition().unwrap();
        assert!(r.identity_holds);
        assert!(r.elevated_matches_printed);
        assert!(r.all_positive);
        assert!(r.r <= 4);
    }
}
