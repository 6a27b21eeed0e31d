//! Printed closed forms of the Lagrange polynomials for F₁ … F₄, checked
//! term by term against the solved basis after homogenisation.

use serde::Serialize;

use super::{lagrange_solve, LagrangeBasis};
use crate::pointsets::{deg3_edge_t, deg4_triangle_apex, fekete_candidate_exact, sqrt_three_sevenths};
use crate::polyring::BaryPoly;
use crate::scalar::{rat, AlgebraicScalar, Rational, Ring, Sign};
use crate::{Error, Result};

type Poly = BaryPoly<AlgebraicScalar>;

/// A printed formula that does not reproduce the solved polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct Discrepancy {
    pub index: usize,
    pub family: String,
    pub face: Vec<usize>,
    /// Candidate repair that was tried, if any.
    pub correction: Option<String>,
    /// Whether the repaired formula equals the solved polynomial.
    pub correction_matches: bool,
}

#[derive(Debug, Clone)]
pub struct ClosedForm {
    /// Printed formulas where they agree, solved polynomials elsewhere.
    pub basis: LagrangeBasis<AlgebraicScalar>,
    /// The printed formulas, homogenised, in point order.
    pub printed: Vec<Poly>,
    pub family: Vec<String>,
    pub discrepancies: Vec<Discrepancy>,
}

struct Ctx {
    m: usize,
}

impl Ctx {
    fn lam(&self, i: usize) -> Poly {
        Poly::var(self.m, i)
    }
    fn c(&self, x: AlgebraicScalar) -> Poly {
        Poly::constant(self.m, x)
    }
    fn q(&self, a: i64, b: i64) -> Poly {
        self.c(AlgebraicScalar::rational(rat(a, b)))
    }
    fn s(&self, k: u32) -> Poly {
        Poly::power_sum(k, self.m)
    }
}

fn q5(a: Rational, b: Rational) -> AlgebraicScalar {
    AlgebraicScalar::q5(a, b)
}

fn sum(ps: Vec<Poly>) -> Poly {
    let m = ps[0].nvars();
    Poly::sum_all(m, ps)
}

/// Vertex formula of degree 3: (λ_i/2)(12λ_i² − 12λ_i + 3 − S₂).
fn deg3_vertex(x: &Ctx, i: usize) -> Poly {
    let li = x.lam(i);
    let inner = sum(vec![(&li * &li).scale(&AlgebraicScalar::integer(12)), li.scale(&AlgebraicScalar::integer(-12)), x.q(3, 1), -x.s(2)]);
    &li.scale(&AlgebraicScalar::rational(rat(1, 2))) * &inner
}

/// Edge formula of degree 3 for the point tV_i + (1−t)V_j:
/// 5λ_iλ_j((1+t√5)λ_i + (2−t√5)λ_j − 1).
fn deg3_edge(x: &Ctx, i: usize, j: usize) -> Poly {
    let tr5 = deg3_edge_t() * AlgebraicScalar::sqrt5();
    let one = AlgebraicScalar::one();
    let inner = sum(vec![
        x.lam(i).scale(&(one.clone() + tr5.clone())),
        x.lam(j).scale(&(AlgebraicScalar::integer(2) - tr5)),
        x.q(-1, 1),
    ]);
    &(&x.lam(i) * &x.lam(j)).scale(&AlgebraicScalar::integer(5)) * &inner
}

fn product(x: &Ctx, idx: &[usize], c: i64) -> Poly {
    idx.iter().fold(x.q(c, 1), |acc, &i| &acc * &x.lam(i))
}

/// Degree-4 triangle point with apex i.
fn deg4_triangle(x: &Ctx, i: usize, j: usize, k: usize) -> Poly {
    let lead = q5(rat(73, 2), rat(1, 2));
    let inner = sum(vec![
        x.lam(i).scale(&q5(rat(1, 1), rat(1, 1))),
        (&x.lam(j) + &x.lam(k)).scale(&q5(rat(3, 2), rat(-1, 2))),
        x.q(-1, 1),
    ]);
    &product(x, &[i, j, k], 1).scale(&lead) * &inner
}

/// Degree-4 edge point ((1−√(3/7))/2)V_i + ((1+√(3/7))/2)V_j. `second` is
/// the variable multiplying the second linear coefficient; the printed
/// formula has λ_i there.
fn deg4_edge(x: &Ctx, i: usize, j: usize, second: usize) -> Poly {
    let s = sqrt_three_sevenths();
    let a = q5(rat(61, 22), rat(7, 22));
    let b = q5(rat(7, 2), rat(1, 2));
    let c = q5(rat(3, 11), rat(9, 11));
    let dd = q5(rat(5, 2), rat(1, 2));
    let e = q5(rat(41, 22), rat(13, 22));
    let f = q5(rat(8, 11), rat(2, 11));
    let g = q5(rat(7, 11), rat(-1, 11));
    let (li, lj) = (x.lam(i), x.lam(j));
    let inner = sum(vec![
        (&li * &li).scale(&(a.clone() - s.clone() * b.clone())),
        (&li * &lj).scale(&c),
        (&lj * &lj).scale(&(a + s.clone() * b)),
        li.scale(&(s.clone() * dd.clone() - e.clone())),
        -x.lam(second).scale(&(s * dd + e)),
        x.c(f),
        -x.s(2).scale(&g),
    ]);
    &(&li * &lj).scale(&AlgebraicScalar::rational(rat(49, 6))) * &inner
}

/// Degree-4 edge midpoint, with an optional extra constant inside the
/// braces.
fn deg4_mid(x: &Ctx, i: usize, j: usize, constant: Option<AlgebraicScalar>) -> Poly {
    let (li, lj) = (x.lam(i), x.lam(j));
    let mut inner = sum(vec![
        (&(&li * &li) + &(&lj * &lj)).scale(&q5(rat(100, 1), rat(-8, 1))),
        (&li * &lj).scale(&q5(rat(672, 1), rat(-96, 1))),
        (&li + &lj).scale(&q5(rat(-302, 1), rat(62, 1))),
        x.s(2).scale(&q5(rat(82, 1), rat(-40, 1))),
    ]);
    if let Some(c) = constant {
        inner = &inner + &x.c(c);
    }
    &(&li * &lj).scale(&AlgebraicScalar::rational(rat(4, 33))) * &inner
}

/// Degree-4 vertex.
fn deg4_vertex(x: &Ctx, i: usize) -> Poly {
    let li = x.lam(i);
    let l2 = &li * &li;
    let l3 = &l2 * &li;
    let inner = sum(vec![
        l3.scale(&q5(rat(101, 11), rat(17, 11))),
        -l2.scale(&q5(rat(13, 1), rat(2, 1))),
        li.scale(&q5(rat(130, 22), rat(27, 22))),
        -x.c(q5(rat(259, 264), rat(51, 264))),
        &x.s(2) * &(&x.c(q5(rat(9, 8), rat(1, 8))) - &li.scale(&q5(rat(24, 22), rat(17, 22)))),
        x.s(3).scale(&(q5(rat(45, 44), rat(3, 44)) - AlgebraicScalar::rational(rat(5, 3)))),
    ]);
    &li.scale(&AlgebraicScalar::integer(2)) * &inner
}

/// Family label and printed formula for point `idx`, plus an optional
/// candidate repair.
fn printed_formula(
    n: u32,
    x: &Ctx,
    coords: &[AlgebraicScalar],
    tag: &[usize],
) -> (String, Poly, Option<(String, Poly)>) {
    let half = AlgebraicScalar::rational(rat(1, 2));
    match (n, tag.len()) {
        (_, 1) => {
            let i = tag[0];
            let p = match n {
                1 => x.lam(i),
                2 => &x.lam(i) * &(&x.lam(i).scale(&AlgebraicScalar::integer(2)) - &x.q(1, 1)),
                3 => deg3_vertex(x, i),
                _ => deg4_vertex(x, i),
            };
            ("vertex".into(), p, None)
        }
        (2, 2) => ("edge midpoint".into(), product(x, tag, 4), None),
        (3, 2) => {
            let (a, b) = (tag[0], tag[1]);
            let (i, j) = if coords[a] == deg3_edge_t() { (a, b) } else { (b, a) };
            ("edge point".into(), deg3_edge(x, i, j), None)
        }
        (3, 3) => ("2-face centroid".into(), product(x, tag, 27), None),
        (4, 2) => {
            let (a, b) = (tag[0], tag[1]);
            if coords[a] == half {
                (
                    "edge midpoint".into(),
                    deg4_mid(x, a, b, None),
                    Some(("missing constant 76 - 14√5".into(), deg4_mid(x, a, b, Some(q5(rat(76, 1), rat(-14, 1)))))),
                )
            } else {
                // λ_i carries the smaller weight (1 − √(3/7))/2
                let (i, j) = if (coords[b].clone() - coords[a].clone()).sign() == Sign::Positive { (a, b) } else { (b, a) };
                (
                    "edge Gauss-Lobatto point".into(),
                    deg4_edge(x, i, j, i),
                    Some(("second linear term in λ_j instead of λ_i".into(), deg4_edge(x, i, j, j))),
                )
            }
        }
        (4, 3) => {
            let apex = *tag.iter().find(|&&v| coords[v] == deg4_triangle_apex()).expect("apex weight present");
            let rest: Vec<usize> = tag.iter().copied().filter(|&v| v != apex).collect();
            ("2-face triangle point".into(), deg4_triangle(x, apex, rest[0], rest[1]), None)
        }
        (4, 4) => ("3-face centroid".into(), product(x, tag, 256), None),
        _ => unreachable!("no such face for degree {n}"),
    }
}

/// The printed Lagrange formulas for F_n on S_d (n ≤ 4), homogenised and
/// compared with the solved basis.
pub fn lagrange_closed_form(n: u32, d: usize) -> Result<ClosedForm> {
    if !(1..=4).contains(&n) {
        return Err(Error::UnsupportedDegree(n));
    }
    let points = fekete_candidate_exact(n, d)?;
    let solved = lagrange_solve(&points, n)?;
    let x = Ctx { m: d + 1 };
    let mut printed = Vec::new();
    let mut family = Vec::new();
    let mut polys = Vec::new();
    let mut discrepancies = Vec::new();
    for (idx, (p, tag)) in points.points().iter().zip(points.face_tags()).enumerate() {
        let (fam, raw, repair) = printed_formula(n, &x, &p.coords, tag);
        let hom = raw.homogenize(n)?;
        if hom == solved.polys[idx] {
            polys.push(hom.clone());
        } else {
            let (correction, correction_matches) = match repair {
                Some((label, fixed)) => {
                    let ok = fixed.homogenize(n)? == solved.polys[idx];
                    (Some(label), ok)
                }
                None => (None, false),
            };
            discrepancies.push(Discrepancy { index: idx, family: fam.clone(), face: tag.clone(), correction, correction_matches });
            polys.push(solved.polys[idx].clone());
        }
        printed.push(hom);
        family.push(fam);
    }
    Ok(ClosedForm {
        basis: LagrangeBasis { degree: n, nvars: d + 1, polys },
        printed,
        family,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees_agree() {
        for n in 1..=3 {
            for d in 1..=3 {
                let cf = lagrange_closed_form(n, d).unwrap();
                assert!(cf.discrepancies.is_empty(), "n={n} d={d}: {:?}", cf.discrepancies);
            }
        }
    }

    #[test]
    fn degree_four_typos_only_on_edges() {
        for d in 1..=3 {
            let cf = lagrange_closed_form(4, d).unwrap();
            assert_eq!(cf.discrepancies.len(), 3 * (d + 1) * d / 2);
            for disc in &cf.discrepancies {
                assert!(disc.family.starts_with("edge"), "{disc:?}");
                assert!(disc.correction_matches, "{disc:?}");
            }
        }
    }
}
