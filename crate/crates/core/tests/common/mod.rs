//! Property checks shared by the `properties` and `acceptance` targets.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use simplex_fekete::certify::fejer_defect;
use simplex_fekete::interp::{lagrange_solve, partition_of_unity, VandermondeMatrix};
use simplex_fekete::linalg::{bareiss_det, gram};
use simplex_fekete::pointsets::{fekete_candidate_exact, PointSet};
use simplex_fekete::polyring::{BaryPoly, MultiIndex};
use simplex_fekete::scalar::{Field, Interval, Ring, RealScalar, Sign};
use simplex_fekete::{AlgebraicScalar, Rational};

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn finish(r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=15).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn algebraic() -> impl Strategy<Value = AlgebraicScalar> {
    prop::array::uniform4(rational()).prop_map(|[a, b, c, d]| AlgebraicScalar::new(a, b, c, d))
}

/// A point of the simplex with small rational coordinates.
pub fn simplex_point(nvars: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(0i64..=30, nvars).prop_map(move |mut w| {
        if w.iter().all(|&x| x == 0) {
            w[0] = 1;
        }
        let total: i64 = w.iter().sum();
        w.into_iter().map(|x| Rational::new(x.into(), total.into())).collect()
    })
}

fn lift(x: &[Rational]) -> Vec<AlgebraicScalar> {
    x.iter().map(|q| AlgebraicScalar::rational(q.clone())).collect()
}

/// Field axioms in Q(√5, √21), agreement of the exact sign with the float
/// value, and interval enclosure of rational arithmetic.
pub fn ring_axioms(cases: u32) -> Result<(), String> {
    let strat = (algebraic(), algebraic(), algebraic(), rational(), rational(), rational());
    finish(runner(cases).run(&strat, |(a, b, c, p, q, s)| {
        let zero = AlgebraicScalar::zero();
        let one = AlgebraicScalar::one();
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() + (-a.clone()), zero.clone());
        prop_assert_eq!(a.clone() * one.clone(), a.clone());
        if !a.is_zero() {
            let inv = a.inv().map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(a.clone() * inv, one);
        }
        let f = a.to_f64();
        if f.abs() > 1e-9 {
            let expect = if f > 0.0 { Sign::Positive } else { Sign::Negative };
            prop_assert_eq!(a.sign(), expect);
        }
        let enc = a.enclose(96);
        prop_assert!(!enc.certainly_positive() || a.sign() == Sign::Positive);
        prop_assert!(!enc.certainly_negative() || a.sign() == Sign::Negative);

        let exact = (p.clone() + q.clone()) * s.clone() - p.clone() * q.clone();
        let iv = |x: &Rational| Interval::from_rational_prec(x, 64);
        let enclosed = (iv(&p) + iv(&q)) * iv(&s) - iv(&p) * iv(&q);
        prop_assert!(enclosed.contains_rational(&exact));
        Ok(())
    }))
}

fn homogeneous_poly() -> impl Strategy<Value = BaryPoly<Rational>> {
    (2usize..=4, 0u32..=4).prop_flat_map(|(nvars, deg)| {
        let monos = MultiIndex::all_of_degree(nvars, deg);
        let len = monos.len();
        prop::collection::vec(rational(), len).prop_map(move |cs| BaryPoly::from_terms(nvars, monos.clone().into_iter().zip(cs)))
    })
}

/// Multiplying by (Σλ)^r leaves values on the simplex unchanged.
pub fn elevation_consistency(cases: u32) -> Result<(), String> {
    let strat = homogeneous_poly().prop_flat_map(|p| {
        let nvars = p.nvars();
        (Just(p), 0u32..=4, simplex_point(nvars))
    });
    finish(runner(cases).run(&strat, |(p, r, x)| {
        let e = p.degree_elevate(r);
        prop_assert!(e.is_homogeneous());
        if !p.is_zero() {
            prop_assert_eq!(e.degree(), p.degree() + r);
        }
        prop_assert_eq!(e.eval(&x), p.eval(&x));
        prop_assert_eq!(e.clone(), &p * &BaryPoly::linear_sum(p.nvars()).pow(r));
        Ok(())
    }))
}

fn small_case() -> impl Strategy<Value = (u32, usize)> {
    prop_oneof![(1u32..=3, 1usize..=3), (4u32..=4, 1usize..=2)]
}

/// ℓ_i(x_j) = δ_ij at the nodes and Σℓ_i = 1 at random points, exactly.
pub fn lagrange_interpolates(cases: u32) -> Result<(), String> {
    let strat = small_case().prop_flat_map(|(n, d)| (Just(n), Just(d), simplex_point(d + 1)));
    finish(runner(cases).run(&strat, |(n, d, x)| {
        let points = fekete_candidate_exact(n, d).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let basis = lagrange_solve(&points, n).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(basis.delta_defects(&points).is_empty());
        for (j, p) in points.points().iter().enumerate() {
            for (i, l) in basis.polys.iter().enumerate() {
                let want = if i == j { AlgebraicScalar::one() } else { AlgebraicScalar::zero() };
                prop_assert_eq!(l.eval(&p.coords), want);
            }
        }
        prop_assert!(partition_of_unity(&basis));
        let vals = basis.eval_all(&lift(&x));
        let total = vals.into_iter().fold(AlgebraicScalar::zero(), |a, b| a + b);
        prop_assert_eq!(total, AlgebraicScalar::one());
        Ok(())
    }))
}

/// The defects (Σλ)^{2n} − Σℓ̃² of the certified sets F₂ and F₃ on S₃ are
/// nonnegative at `cases` random rational points each.
pub fn certified_nonnegative(cases: u32) -> Result<(), String> {
    for n in [2u32, 3] {
        let points = fekete_candidate_exact(n, 3).map_err(|e| e.to_string())?;
        let basis = lagrange_solve(&points, n).map_err(|e| e.to_string())?;
        let h = fejer_defect(&basis, n).map_err(|e| e.to_string())?;
        finish(runner(cases).run(&simplex_point(4), |x| {
            let v = h.eval(&lift(&x));
            prop_assert!(v.sign() != Sign::Negative, "n = {} defect {} at {:?}", n, v, x);
            Ok(())
        }))?;
    }
    Ok(())
}

fn det_identity<F: Field>(v: &[Vec<F>]) -> (F, F) {
    let size = v.len();
    let big_n = F::from_int(size as i64);
    let inv_n = big_n.inv().expect("N is nonzero");
    let m: Vec<Vec<F>> = gram(&v.to_vec()).into_iter().map(|r| r.into_iter().map(|x| x * inv_n.clone()).collect()).collect();
    let lhs = bareiss_det(&m) * big_n.pow(size as u32);
    let dv = bareiss_det(&v.to_vec());
    (lhs, dv.clone() * dv)
}

/// det(G)·N^N = det(V)² with G = VᵀV/N, for random square V and for the
/// Vandermonde matrices of the candidate sets.
pub fn gram_determinant(cases: u32) -> Result<(), String> {
    let strat = (1usize..=6).prop_flat_map(|k| prop::collection::vec(prop::collection::vec(rational(), k), k));
    finish(runner(cases).run(&strat, |v| {
        let (lhs, rhs) = det_identity(&v);
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))?;
    finish(runner(cases.min(24)).run(&small_case(), |(n, d)| {
        let points: PointSet<AlgebraicScalar> = fekete_candidate_exact(n, d).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let v = VandermondeMatrix::new(&points, n);
        let (lhs, rhs) = det_identity(&v.entries);
        prop_assert!(!rhs.is_zero());
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))
}
