//! The degree-5 free parameters: the 2-face pair (u, v), the 3-face weight w,
//! and the decoupled Vandermonde factors that define them.

use serde::Serialize;

use crate::interp::vdm_det_interval;
use crate::linalg::{bareiss_det, minor_det, Matrix};
use crate::pointsets::{deg5_q_polynomial, deg5_w_minus, deg5_w_plus, fekete_candidate_deg5, Deg5Params, DEG5_U_SEED, DEG5_V_SEED};
use crate::polyring::{BaryPoly, SymPoly, Upoly};
use crate::scalar::{int, rat, AlgebraicScalar, Interval, Rational, Ring, Sign};
use crate::{Error, Result};

type P2 = BaryPoly<Rational>;

/// Printed decimal digits of the chosen 2-face roots.
pub const PRINTED_U: &str = "0.148019471315134";
pub const PRINTED_V: &str = "0.420825539292557";

fn u2() -> P2 {
    P2::var(2, 0)
}

fn v2() -> P2 {
    P2::var(2, 1)
}

fn c2(a: i64) -> P2 {
    P2::constant(2, int(a))
}

/// a·u + b·v + c.
fn lin(a: i64, b: i64, c: i64) -> P2 {
    let mut p = c2(c);
    if a != 0 {
        p = &p + &u2().scale(&int(a));
    }
    if b != 0 {
        p = &p + &v2().scale(&int(b));
    }
    p
}

fn prod(factors: &[(P2, u32)]) -> P2 {
    factors.iter().fold(c2(1), |acc, (f, e)| &acc * &f.pow(*e))
}

fn from_rows(rows: &[&[(i64, u32, u32)]]) -> Vec<P2> {
    rows.iter()
        .map(|r| P2::sum_all(2, r.iter().map(|&(c, i, j)| &u2().pow(i) * &v2().pow(j).scale(&int(c)))))
        .collect()
}

/// p(u, v) = (u−v)³u⁶v⁶(2u−1)³(2v−1)³(3u−1)²(3v−1)²(3(u+v)−2).
pub fn deg5_objective() -> P2 {
    prod(&[
        (lin(1, -1, 0), 3),
        (u2(), 6),
        (v2(), 6),
        (lin(2, 0, -1), 3),
        (lin(0, 2, -1), 3),
        (lin(3, 0, -1), 2),
        (lin(0, 3, -1), 2),
        (lin(3, 3, -2), 1),
    ])
}

/// The stationarity factors q₁ and q₂ as printed.
pub fn stationarity_factors() -> (P2, P2) {
    let v = from_rows(&[
        &[(45, 4, 0), (6, 3, 1), (-59, 3, 0), (-33, 2, 2), (17, 2, 1), (24, 2, 0), (21, 1, 2), (-13, 1, 1), (-3, 1, 0), (-3, 0, 2), (2, 0, 1)],
        &[(33, 2, 2), (-21, 2, 1), (3, 2, 0), (-6, 1, 3), (-17, 1, 2), (13, 1, 1), (-2, 1, 0), (-45, 0, 4), (59, 0, 3), (-24, 0, 2), (3, 0, 1)],
    ]);
    (v[0].clone(), v[1].clone())
}

/// Whether ∂p/∂u and ∂p/∂v equal the printed factorisations.
pub fn derivative_factorizations_hold() -> bool {
    let p = deg5_objective();
    let (q1, q2) = stationarity_factors();
    let du = &prod(&[
        (c2(6), 1),
        (lin(1, -1, 0), 2),
        (u2(), 5),
        (v2(), 6),
        (lin(0, 2, -1), 3),
        (lin(0, 3, -1), 2),
        (lin(2, 0, -1), 2),
        (lin(3, 0, -1), 1),
    ]) * &q1;
    let dv = &prod(&[
        (c2(6), 1),
        (lin(1, -1, 0), 2),
        (u2(), 6),
        (v2(), 5),
        (lin(2, 0, -1), 3),
        (lin(0, 2, -1), 2),
        (lin(3, 0, -1), 2),
        (lin(0, 3, -1), 1),
    ]) * &q2;
    p.partial_derivative(0) == du && p.partial_derivative(1) == dv
}

fn eval_interval(p: &P2, u: &Interval, v: &Interval) -> Interval {
    let prec = u.precision().max(v.precision());
    p.map_coeffs(|c| Interval::from_rational_prec(c, prec)).eval(&[u.clone(), v.clone()])
}

/// Parses a plain decimal such as `0.148019471315134`.
fn parse_decimal(s: &str) -> (Rational, u32) {
    let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = frac.len() as u32;
    let scale = num_traits::pow(num_bigint::BigInt::from(10), digits as usize);
    let n: num_bigint::BigInt = format!("{whole}{frac}").parse().expect("decimal literal");
    (Rational::new(n, scale), digits)
}

/// How an enclosure compares to a printed decimal.
#[derive(Debug, Clone, Serialize)]
pub struct DigitMatch {
    pub printed: String,
    /// The value rounds to the printed digits.
    pub rounded: bool,
    /// The value truncates to the printed digits.
    pub truncated: bool,
}

impl DigitMatch {
    pub fn matches(&self) -> bool {
        self.rounded || self.truncated
    }
}

fn digit_match(x: &Interval, printed: &str) -> DigitMatch {
    let (p, digits) = parse_decimal(printed);
    let ulp = Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), digits as usize));
    let half = &ulp / int(2);
    let lo = x.lo().to_rational();
    let hi = x.hi().to_rational();
    DigitMatch {
        printed: printed.into(),
        rounded: lo >= &p - &half && hi < &p + &half,
        truncated: lo >= p && hi < &p + &ulp,
    }
}

/// A pair of roots of q tried as (u, v).
#[derive(Debug, Clone, Serialize)]
pub struct RootPair {
    pub u: String,
    pub v: String,
    pub q1_vanishes: bool,
    pub q2_vanishes: bool,
    /// |p(u, v)|.
    pub abs_p: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceOptimum {
    pub u: f64,
    pub v: f64,
    pub abs_p: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoFaceReport {
    pub derivative_factorizations_hold: bool,
    pub precision_bits: u32,
    /// Roots of q in (0, 1/2), increasing.
    pub q_roots: Vec<String>,
    /// Ordered pairs u < v of distinct roots that are common zeros of q₁, q₂.
    pub stationary_pairs: Vec<RootPair>,
    pub u: String,
    pub v: String,
    pub u_enclosure: String,
    pub v_enclosure: String,
    pub abs_p: f64,
    pub u_digits: DigitMatch,
    pub v_digits: DigitMatch,
    /// |q(u)|, |q(v)| divided by the sum of absolute coefficients.
    pub q_residual_u: f64,
    pub q_residual_v: f64,
    /// Best point of a uniform grid on (0, 1/2)², ordered u < v.
    pub grid_maximum: FaceOptimum,
    /// The chosen pair is within two grid spacings of the grid maximum.
    pub grid_agrees: bool,
    #[serde(skip)]
    pub u_interval: Interval,
    #[serde(skip)]
    pub v_interval: Interval,
}

fn grid_maximum(p: &P2, steps: usize) -> FaceOptimum {
    let pf = p.to_f64_poly();
    let mut best = FaceOptimum { u: 0.0, v: 0.0, abs_p: -1.0 };
    for i in 1..steps {
        let u = 0.5 * i as f64 / steps as f64;
        for j in (i + 1)..steps {
            let v = 0.5 * j as f64 / steps as f64;
            let val = pf.eval(&[u, v]).abs();
            if val > best.abs_p {
                best = FaceOptimum { u, v, abs_p: val };
            }
        }
    }
    best
}

/// Maximises |p| over pairs of roots of q in (0, 1/2) that are common zeros
/// of q₁ and q₂, and cross-checks against a grid search.
pub fn optimize_deg5_2face(prec: u32) -> Result<TwoFaceReport> {
    let q = deg5_q_polynomial();
    let p = deg5_objective();
    let (q1, q2) = stationarity_factors();
    let roots = q.real_roots(&int(0), &rat(1, 2), prec + 16);
    let mut pairs: Vec<(RootPair, Interval, Interval)> = Vec::new();
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            let z1 = eval_interval(&q1, a, b).contains_zero();
            let z2 = eval_interval(&q2, a, b).contains_zero();
            if z1 && z2 {
                let val = eval_interval(&p, a, b).abs().mid_f64();
                pairs.push((
                    RootPair { u: a.render_mid(20), v: b.render_mid(20), q1_vanishes: z1, q2_vanishes: z2, abs_p: val },
                    a.clone(),
                    b.clone(),
                ));
            }
        }
    }
    let best = pairs
        .iter()
        .max_by(|x, y| x.0.abs_p.total_cmp(&y.0.abs_p))
        .ok_or_else(|| Error::Invalid("no common zero of q1 and q2 among the roots of q".into()))?
        .clone();
    let (_, u, v) = best.clone();
    let steps = 400;
    let grid = grid_maximum(&p, steps);
    let spacing = 0.5 / steps as f64;
    let grid_agrees = (grid.u - u.mid_f64()).abs() <= 2.0 * spacing && (grid.v - v.mid_f64()).abs() <= 2.0 * spacing;
    let scale: f64 = q.coeffs().iter().map(|c| crate::scalar::rational_to_f64(c).abs()).sum();
    let resid = |x: &Interval| q.eval_interval(x).abs().hi().to_f64() / scale;
    Ok(TwoFaceReport {
        derivative_factorizations_hold: derivative_factorizations_hold(),
        precision_bits: prec,
        q_roots: roots.iter().map(|r| r.render_mid(20)).collect(),
        stationary_pairs: pairs.into_iter().map(|p| p.0).collect(),
        u: u.render_mid(30),
        v: v.render_mid(30),
        u_enclosure: u.render_decimal(),
        v_enclosure: v.render_decimal(),
        abs_p: best.0.abs_p,
        u_digits: digit_match(&u, PRINTED_U),
        v_digits: digit_match(&v, PRINTED_V),
        q_residual_u: resid(&u),
        q_residual_v: resid(&v),
        grid_maximum: grid,
        grid_agrees,
        u_interval: u,
        v_interval: v,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultantReport {
    /// Integer coefficients of the primitive resultant, constant term first.
    pub resultant: Vec<String>,
    pub resultant_degree: usize,
    /// The printed q divides the resultant.
    pub q_divides: bool,
    /// Primitive part of gcd(resultant, printed q), constant term first.
    pub recovered_factor: Vec<String>,
    /// The recovered factor equals the printed q coefficient for coefficient.
    pub recovered_equals_printed: bool,
    /// Primitive cofactor resultant / q, constant term first.
    pub cofactor: Vec<String>,
    /// Multiplicity of q in the resultant.
    pub q_multiplicity: u32,
}

/// Coefficients in u of a polynomial in (u, v), as polynomials in v.
fn coefficients_in_u(p: &P2) -> Vec<Upoly> {
    let deg = p.terms().map(|(a, _)| a.exps()[0]).max().unwrap_or(0) as usize;
    let mut out = vec![Upoly::zero(); deg + 1];
    for (alpha, c) in p.terms() {
        let e = alpha.exps();
        let mut coeffs = vec![int(0); e[1] as usize + 1];
        coeffs[e[1] as usize] = c.clone();
        out[e[0] as usize] = out[e[0] as usize].clone() + Upoly::new(coeffs);
    }
    out
}

/// Sylvester matrix of two polynomials given by ascending coefficients.
fn sylvester<R: Ring>(a: &[R], b: &[R]) -> Matrix<R> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![R::zero(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![R::zero(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

fn ints(p: &Upoly) -> Vec<String> {
    p.primitive_integer().iter().map(|c| c.to_string()).collect()
}

/// Eliminates u from q₁ = q₂ = 0 with the Sylvester resultant and compares
/// the result with the printed q(v).
pub fn rederive_q_by_resultant() -> ResultantReport {
    let (q1, q2) = stationarity_factors();
    let res = bareiss_det(&sylvester(&coefficients_in_u(&q1), &coefficients_in_u(&q2)));
    let q = deg5_q_polynomial();
    let (mut cof, rem) = res.div_rem(&q);
    let q_divides = rem.is_zero() && !res.is_zero();
    let mut mult = if q_divides { 1 } else { 0 };
    while q_divides {
        let (next, r) = cof.div_rem(&q);
        if !r.is_zero() {
            break;
        }
        cof = next;
        mult += 1;
    }
    let g = res.gcd(&q);
    let recovered = ints(&g);
    ResultantReport {
        resultant: ints(&res),
        resultant_degree: res.degree().unwrap_or(0),
        q_divides,
        recovered_equals_printed: recovered == ints(&q) && ints(&q).first().map(String::as_str) == Some("5"),
        recovered_factor: recovered,
        cofactor: ints(&cof),
        q_multiplicity: mult,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThreeFaceReport {
    /// d/dw[(w³(1−3w))⁴(1−4w)³] = 12w¹¹(1−3w)³(1−4w)²(19w²−9w+1).
    pub derivative_identity: bool,
    /// (9 ± √5)/38 are exact roots of 19w² − 9w + 1.
    pub roots_exact: bool,
    pub w_minus: String,
    pub w_plus: String,
    pub objective_minus: String,
    pub objective_plus: String,
    pub objective_minus_f64: f64,
    pub objective_plus_f64: f64,
    /// |objective((9−√5)/38)| > |objective((9+√5)/38)|.
    pub minus_is_global: bool,
    pub w: String,
}

/// (w³(1−3w))⁴(1−4w)³.
fn three_face_objective() -> Upoly {
    let w = Upoly::x();
    let one_3w = Upoly::from_ints(&[1, -3]);
    let one_4w = Upoly::from_ints(&[1, -4]);
    Ring::pow(&(Ring::pow(&w, 3) * one_3w), 4) * Ring::pow(&one_4w, 3)
}

fn eval_alg(p: &Upoly, x: &AlgebraicScalar) -> AlgebraicScalar {
    p.coeffs().iter().rev().fold(AlgebraicScalar::zero(), |acc, c| acc * x.clone() + AlgebraicScalar::rational(c.clone()))
}

fn abs_alg(x: AlgebraicScalar) -> AlgebraicScalar {
    if x.sign() == Sign::Negative {
        -x
    } else {
        x
    }
}

/// Critical points of the 3-face determinant and their classification.
pub fn optimize_deg5_3face() -> ThreeFaceReport {
    let f = three_face_objective();
    let quad = Upoly::from_ints(&[1, -9, 19]);
    let rhs = Upoly::from_ints(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 12])
        * Ring::pow(&Upoly::from_ints(&[1, -3]), 3)
        * Ring::pow(&Upoly::from_ints(&[1, -4]), 2)
        * quad.clone();
    let (wm, wp) = (deg5_w_minus(), deg5_w_plus());
    let roots_exact = eval_alg(&quad, &wm).sign() == Sign::Zero && eval_alg(&quad, &wp).sign() == Sign::Zero;
    let (fm, fp) = (eval_alg(&f, &wm), eval_alg(&f, &wp));
    let minus_is_global = (abs_alg(fm.clone()) - abs_alg(fp.clone())).sign() == Sign::Positive;
    ThreeFaceReport {
        derivative_identity: f.derivative() == rhs,
        roots_exact,
        w_minus: wm.canonical_string(),
        w_plus: wp.canonical_string(),
        objective_minus_f64: crate::scalar::RealScalar::to_f64(&fm),
        objective_plus_f64: crate::scalar::RealScalar::to_f64(&fp),
        objective_minus: fm.canonical_string(),
        objective_plus: fp.canonical_string(),
        minus_is_global,
        w: if minus_is_global { wm.canonical_string() } else { wp.canonical_string() },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecouplingReport {
    pub dim: usize,
    /// Interior-block determinant, expanded.
    pub determinant: String,
    /// Printed closed form without the constant.
    pub closed_form: String,
    /// det = constant · closed form.
    pub constant: String,
    pub matches: bool,
    /// The determinant vanishes on u = v (d = 2) or at w = 1/4 (d = 3).
    pub degenerate_vanishes: bool,
    /// The full Vandermonde determinant divided by the boundary-free factor
    /// is the same at several parameter values.
    pub full_ratio_constant: bool,
    pub full_ratios: Vec<String>,
}

fn ratio_constant(p: &BaryPoly<Rational>, q: &BaryPoly<Rational>) -> Option<Rational> {
    let (alpha, c) = q.terms().next()?;
    let k = p.coeff(alpha) / c.clone();
    (p == &q.scale(&k)).then_some(k)
}

fn interior_block_d2() -> SymPoly<2> {
    let u = SymPoly::<2>::var(0);
    let v = SymPoly::<2>::var(1);
    let one = SymPoly::<2>::one();
    let two = SymPoly::<2>::constant(int(2));
    let mut pts: Vec<[SymPoly<2>; 3]> = Vec::new();
    for t in [u, v] {
        let apex = one.clone() - two.clone() * t.clone();
        pts.push([t.clone(), t.clone(), apex.clone()]);
        pts.push([t.clone(), apex.clone(), t.clone()]);
        pts.push([apex, t.clone(), t]);
    }
    let rows: Matrix<SymPoly<2>> = pts
        .iter()
        .map(|[a, b, c]| {
            vec![
                a.clone() * a.clone(),
                b.clone() * b.clone(),
                c.clone() * c.clone(),
                a.clone() * b.clone(),
                a.clone() * c.clone(),
                b.clone() * c.clone(),
            ]
        })
        .collect();
    minor_det(&rows)
}

fn interior_block_d3() -> SymPoly<1> {
    let w = SymPoly::<1>::var(0);
    let apex = SymPoly::<1>::one() - SymPoly::<1>::constant(int(3)) * w.clone();
    let rows: Matrix<SymPoly<1>> = (0..4).map(|i| (0..4).map(|j| if i == j { apex.clone() } else { w.clone() }).collect()).collect();
    minor_det(&rows)
}

/// Vandermonde determinant of the full F₅ on S_d at given parameters.
fn full_vdm(d: usize, u: &Rational, v: &Rational, w: &Rational, prec: u32) -> Result<Interval> {
    let params = Deg5Params {
        u: Interval::from_rational_prec(u, prec),
        v: Interval::from_rational_prec(v, prec),
        w: AlgebraicScalar::rational(w.clone()),
    };
    let pts = fekete_candidate_deg5(d, &params, prec)?;
    vdm_det_interval(&pts, 5)
}

/// Symbolic check of the decoupled interior determinant for d = 2 or 3,
/// with a numeric check that the full determinant factors through it.
pub fn vdm_decoupling_check_deg5(d: usize) -> Result<DecouplingReport> {
    let prec = 192;
    let iv = |q: &Rational| Interval::from_rational_prec(q, prec);
    match d {
        2 => {
            let det = interior_block_d2();
            let target = prod(&[(lin(1, -1, 0), 3), (lin(3, 0, -1), 2), (lin(0, 3, -1), 2), (lin(3, 3, -2), 1)]);
            let k = ratio_constant(det.poly(), &target);
            let on_diagonal = det.poly().compose(&[u2(), u2()]);
            let mut ratios = Vec::new();
            for (a, b) in [(rat(1, 10), rat(2, 5)), (rat(3, 20), rat(21, 50)), (rat(1, 5), rat(3, 10))] {
                let full = full_vdm(2, &a, &b, &rat(1, 5), prec)?;
                let bubble = |t: &Rational| {
                    let s = t * t * (int(1) - t * int(2));
                    &s * &s * &s
                };
                let block = iv(&(bubble(&a) * bubble(&b) * det.poly().eval(&[a.clone(), b.clone()])));
                ratios.push(full.checked_div(&block)?);
            }
            Ok(report(d, det.poly(), &target, k, on_diagonal.is_zero(), ratios, &["u", "v"]))
        }
        3 => {
            let det = interior_block_d3();
            let target = BaryPoly::<Rational>::from_terms(1, Upoly::from_ints(&[1, -4]).coeffs().iter().enumerate().map(|(i, c)| (crate::polyring::MultiIndex::new(vec![i as u32]), c.clone())))
                .pow(3);
            let k = ratio_constant(det.poly(), &target);
            let degenerate = det.poly().eval(&[rat(1, 4)]).is_zero();
            let mut ratios = Vec::new();
            for w in [rat(1, 10), rat(1, 5), rat(3, 10)] {
                let full = full_vdm(3, &exact(DEG5_U_SEED), &exact(DEG5_V_SEED), &w, prec)?;
                let b = w.clone() * w.clone() * w.clone() * (int(1) - w.clone() * int(3));
                let block = iv(&(num_traits::pow(b, 4) * det.poly().eval(&[w.clone()])));
                ratios.push(full.checked_div(&block)?);
            }
            Ok(report(d, det.poly(), &target, k, degenerate, ratios, &["w"]))
        }
        _ => Err(Error::InvalidDimension(d)),
    }
}

fn exact(x: f64) -> Rational {
    Rational::from_float(x).expect("finite")
}

fn report(
    dim: usize,
    det: &BaryPoly<Rational>,
    target: &BaryPoly<Rational>,
    k: Option<Rational>,
    degenerate_vanishes: bool,
    ratios: Vec<Interval>,
    names: &[&str],
) -> DecouplingReport {
    let full_ratio_constant = ratios.windows(2).all(|w| w[0].overlaps(&w[1])) && ratios.iter().all(|r| r.mignitude() > 0.0);
    DecouplingReport {
        dim,
        determinant: det.render_with(names),
        closed_form: target.render_with(names),
        constant: k.as_ref().map(crate::scalar::render_rational).unwrap_or_else(|| "none".into()),
        matches: k.is_some_and(|k| !Ring::is_zero(&k)),
        degenerate_vanishes,
        full_ratio_constant,
        full_ratios: ratios.iter().map(|r| r.render_mid(20)).collect(),
    }
}

/// Whether the six 2-face interior points lie on the triangle spanned by the
/// three u-points: the v-point (v, v, 1−2v) sits on the side through
/// (1−2u, u, u) and (u, 1−2u, u) exactly when 1 − 2v = u.
#[derive(Debug, Clone, Serialize)]
pub struct TriangleDiagnostic {
    /// 1 − 2v − u.
    pub defect: f64,
    pub defect_enclosure: String,
    /// det of the barycentric rows of (1−2u, u, u), (u, 1−2u, u), (v, v, 1−2v).
    pub determinant: f64,
    pub collinear: bool,
}

pub fn interior_triangle_diagnostic(u: &Interval, v: &Interval) -> TriangleDiagnostic {
    let prec = u.precision();
    let one = Interval::from_int_prec(1, prec);
    let two = Interval::from_int_prec(2, prec);
    let defect = one.clone() - two.clone() * v.clone() - u.clone();
    let au = one.clone() - two.clone() * u.clone();
    let av = one - two * v.clone();
    let rows = vec![vec![au.clone(), u.clone(), u.clone()], vec![u.clone(), au, u.clone()], vec![v.clone(), v.clone(), av]];
    let det = minor_det(&rows);
    TriangleDiagnostic {
        defect: defect.mid_f64(),
        defect_enclosure: defect.render_decimal(),
        determinant: det.mid_f64(),
        collinear: defect.contains_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_partials() {
        assert!(derivative_factorizations_hold());
    }

    #[test]
    fn three_face() {
        let r = optimize_deg5_3face();
        assert!(r.derivative_identity && r.roots_exact && r.minus_is_global);
        assert_eq!(r.w, deg5_w_minus().canonical_string());
    }

    #[test]
    fn sylvester_of_linears() {
        // res(x − a, x − b) = b − a for monic linears, up to sign convention
        let a = [int(-2), int(1)];
        let b = [int(-5), int(1)];
        assert_eq!(bareiss_det(&sylvester(&a, &b)), int(-3));
    }

    #[test]
    fn decimal_matching() {
        let x = Interval::from_rational_prec(&rat(1234567, 10_000_000), 128);
        assert!(digit_match(&x, "0.123457").rounded);
        assert!(digit_match(&x, "0.123456").truncated);
        assert!(!digit_match(&x, "0.123458").matches());
    }
}
