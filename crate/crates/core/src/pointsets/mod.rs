//! The candidate sets F₁ … F₅ on the d-simplex.
//!
//! Every set is built face by face: each face of dimension k receives the
//! relative-interior points of the k-dimensional construction, so restricting
//! to a face reproduces the lower-dimensional set by construction. Degrees up
//! to four are exact in Q(√5, √21); degree five is carried in intervals.

mod export;

use std::sync::OnceLock;

use serde::Serialize;

pub use export::{to_csv, to_json_value, PointRecord, PointSetReport};

use crate::polyring::Upoly;
use crate::scalar::{int, rat, AlgebraicScalar, Interval, Rational, RealScalar, Ring, Sign, DEFAULT_PRECISION};
use crate::{Error, Result};

/// Barycentric coordinates (λ₁, …, λ_{d+1}).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct BaryPoint<S> {
    pub coords: Vec<S>,
}

impl<S> BaryPoint<S> {
    pub fn new(coords: Vec<S>) -> Self {
        BaryPoint { coords }
    }
}

/// A labelled point set on S_d with the smallest containing face of every
/// point (sorted vertex indices).
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet<S> {
    degree: u32,
    dim: usize,
    points: Vec<BaryPoint<S>>,
    face_tags: Vec<Vec<usize>>,
}

impl<S: RealScalar> PointSet<S> {
    /// Assembles a set; tags must be sorted and match the supports.
    pub fn new(degree: u32, dim: usize, points: Vec<BaryPoint<S>>, face_tags: Vec<Vec<usize>>) -> Self {
        assert_eq!(points.len(), face_tags.len());
        PointSet { degree, dim, points, face_tags }
    }

    /// Untagged set; tags are recomputed from the coordinate supports
    /// (structural zeros).
    pub fn from_points(degree: u32, dim: usize, points: Vec<BaryPoint<S>>) -> Self {
        let face_tags = points
            .iter()
            .map(|p| p.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect())
            .collect();
        PointSet { degree, dim, points, face_tags }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.dim + 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[BaryPoint<S>] {
        &self.points
    }

    pub fn face_tags(&self) -> &[Vec<usize>] {
        &self.face_tags
    }

    pub fn map<T: RealScalar>(&self, f: impl Fn(&S) -> T) -> PointSet<T> {
        PointSet {
            degree: self.degree,
            dim: self.dim,
            points: self.points.iter().map(|p| BaryPoint::new(p.coords.iter().map(&f).collect())).collect(),
            face_tags: self.face_tags.clone(),
        }
    }

    pub fn to_interval(&self, prec: u32) -> PointSet<Interval> {
        self.map(|c| c.to_interval(prec))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.coords.iter().map(RealScalar::to_f64).collect()).collect()
    }

    /// Replaces the point with index `i`; used to build perturbed sets.
    pub fn with_point(&self, i: usize, point: BaryPoint<S>, tag: Vec<usize>) -> Self {
        let mut out = self.clone();
        out.points[i] = point;
        out.face_tags[i] = tag;
        out
    }

    /// Points lying on `face` (sorted vertex indices), in local barycentric
    /// coordinates of that face, with tags renumbered.
    pub fn restrict_to_face(&self, face: &[usize]) -> PointSet<S> {
        let mut points = Vec::new();
        let mut tags = Vec::new();
        for (p, tag) in self.points.iter().zip(&self.face_tags) {
            if tag.iter().all(|v| face.contains(v)) {
                points.push(BaryPoint::new(face.iter().map(|&v| p.coords[v].clone()).collect()));
                tags.push(tag.iter().map(|v| face.iter().position(|f| f == v).unwrap()).collect());
            }
        }
        PointSet { degree: self.degree, dim: face.len() - 1, points, face_tags: tags }
    }

    /// Cardinality, coordinate signs, coordinate sums and tag consistency.
    pub fn validate(&self) -> Result<()> {
        let expected = cardinality(self.degree, self.dim) as usize;
        if self.points.len() != expected {
            return Err(Error::Cardinality { expected, found: self.points.len() });
        }
        for (p, tag) in self.points.iter().zip(&self.face_tags) {
            if p.coords.len() != self.nvars() {
                return Err(Error::InvalidDimension(p.coords.len()));
            }
            let mut sum = S::zero();
            for (i, c) in p.coords.iter().enumerate() {
                match c.sign() {
                    Some(Sign::Negative) => return Err(Error::Invalid(format!("negative coordinate {}", c.render()))),
                    Some(Sign::Zero) if tag.contains(&i) => {
                        return Err(Error::Invalid(format!("zero coordinate {i} inside tagged face")))
                    }
                    Some(Sign::Positive) | None if !tag.contains(&i) => {
                        return Err(Error::Invalid(format!("coordinate {i} outside tagged face is not zero")))
                    }
                    _ => {}
                }
                sum += c;
            }
            let defect = sum - S::one();
            if matches!(defect.sign(), Some(Sign::Positive) | Some(Sign::Negative)) {
                return Err(Error::Invalid(format!("coordinates sum to 1 + {}", defect.render())));
            }
        }
        if !self.pairwise_distinct() {
            return Err(Error::Invalid("repeated point".into()));
        }
        Ok(())
    }

    /// Exact domains compare structurally; intervals must be disjoint in
    /// some coordinate.
    pub fn pairwise_distinct(&self) -> bool {
        for i in 0..self.points.len() {
            for j in 0..i {
                let separated = self.points[i].coords.iter().zip(&self.points[j].coords).any(|(a, b)| {
                    let diff = a.clone() - b.clone();
                    matches!(diff.sign(), Some(Sign::Positive) | Some(Sign::Negative))
                });
                if !separated {
                    return false;
                }
            }
        }
        true
    }
}

/// Exact or interval candidate set, depending on the degree.
#[derive(Clone, Debug)]
pub enum CandidateSet {
    Exact(PointSet<AlgebraicScalar>),
    Numeric(PointSet<Interval>),
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        match self {
            CandidateSet::Exact(p) => p.len(),
            CandidateSet::Numeric(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_interval(&self, prec: u32) -> PointSet<Interval> {
        match self {
            CandidateSet::Exact(p) => p.to_interval(prec),
            CandidateSet::Numeric(p) => p.to_interval(prec),
        }
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        match self {
            CandidateSet::Exact(p) => p.to_f64(),
            CandidateSet::Numeric(p) => p.to_f64(),
        }
    }

    pub fn face_tags(&self) -> &[Vec<usize>] {
        match self {
            CandidateSet::Exact(p) => p.face_tags(),
            CandidateSet::Numeric(p) => p.face_tags(),
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// N = C(n+d, d), the dimension of polynomials of degree ≤ n in d variables.
pub fn cardinality(n: u32, d: usize) -> u64 {
    binomial(n as u64 + d as u64, d as u64)
}

/// All `size`-element subsets of {0, …, m−1} in lexicographic order.
pub fn faces(m: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, size, &mut Vec::with_capacity(size), &mut out);
    out
}

fn check_args(n: u32, d: usize) -> Result<()> {
    if !(1..=5).contains(&n) {
        return Err(Error::UnsupportedDegree(n));
    }
    if d < 1 {
        return Err(Error::InvalidDimension(d));
    }
    Ok(())
}

/// Places the local relative-interior patterns on every face.
fn assemble<S: RealScalar>(n: u32, d: usize, local: impl Fn(usize) -> Vec<Vec<S>>) -> PointSet<S> {
    let m = d + 1;
    let mut points = Vec::new();
    let mut tags = Vec::new();
    for k in 0..=d.min(n as usize - 1) {
        let patterns = local(k);
        debug_assert_eq!(patterns.len() as u64, binomial(n as u64 - 1, k as u64));
        for face in faces(m, k + 1) {
            for pat in &patterns {
                let mut coords = vec![S::zero(); m];
                for (slot, &v) in face.iter().enumerate() {
                    coords[v] = pat[slot].clone();
                }
                points.push(BaryPoint::new(coords));
                tags.push(face.clone());
            }
        }
    }
    PointSet { degree: n, dim: d, points, face_tags: tags }
}

/// The three arrangements of (x, y, y) with the distinguished value moved
/// through each slot, starting from the last.
fn apex_perms<S: Clone>(x: &S, y: &S, size: usize) -> Vec<Vec<S>> {
    (0..size)
        .rev()
        .map(|apex| (0..size).map(|i| if i == apex { x.clone() } else { y.clone() }).collect())
        .collect()
}

fn alg(a: Rational) -> AlgebraicScalar {
    AlgebraicScalar::rational(a)
}

/// (1+1/√5)/2, the degree-3 edge parameter.
pub fn deg3_edge_t() -> AlgebraicScalar {
    AlgebraicScalar::q5(rat(1, 2), rat(1, 10))
}

/// √(3/7) = √21/7.
pub fn sqrt_three_sevenths() -> AlgebraicScalar {
    AlgebraicScalar::new(int(0), int(0), rat(1, 7), int(0))
}

/// Apex weight (4+√5)/11 of the degree-4 triangle points.
pub fn deg4_triangle_apex() -> AlgebraicScalar {
    AlgebraicScalar::q5(rat(4, 11), rat(1, 11))
}

/// Side weight (7−√5)/22 of the degree-4 triangle points.
pub fn deg4_triangle_side() -> AlgebraicScalar {
    AlgebraicScalar::q5(rat(7, 22), rat(-1, 22))
}

/// w = (9−√5)/38, the global maximiser for the degree-5 3-face points.
pub fn deg5_w_minus() -> AlgebraicScalar {
    AlgebraicScalar::q5(rat(9, 38), rat(-1, 38))
}

/// (9+√5)/38, the local maximiser.
pub fn deg5_w_plus() -> AlgebraicScalar {
    AlgebraicScalar::q5(rat(9, 38), rat(1, 38))
}

/// Exact edge nodes (first, second local coordinate), ordered by decreasing
/// first coordinate; both endpoints included.
pub fn edge_nodes_exact(n: u32) -> Option<Vec<(AlgebraicScalar, AlgebraicScalar)>> {
    let half = alg(rat(1, 2));
    let interior: Vec<AlgebraicScalar> = match n {
        1 => vec![],
        2 => vec![half.clone()],
        3 => {
            let t = deg3_edge_t();
            vec![t.clone(), AlgebraicScalar::one() - t]
        }
        4 => {
            let s = sqrt_three_sevenths();
            let hs = s.scale(&rat(1, 2));
            vec![half.clone() + hs.clone(), half.clone(), half - hs]
        }
        _ => return None,
    };
    let mut out = vec![(AlgebraicScalar::one(), AlgebraicScalar::zero())];
    out.extend(interior.into_iter().map(|a| {
        let b = AlgebraicScalar::one() - a.clone();
        (a, b)
    }));
    out.push((AlgebraicScalar::zero(), AlgebraicScalar::one()));
    Some(out)
}

/// Univariate Fekete nodes on an edge: the zeros of (x²−1)P_n′(x) mapped by
/// z ↦ ((1−z)/2, (1+z)/2). Ordered by decreasing first coordinate.
pub fn edge_nodes(n: u32, prec: u32) -> Vec<(Interval, Interval)> {
    let one = Interval::from_int_prec(1, prec);
    let half = Interval::from_rational_prec(&rat(1, 2), prec);
    let mut zs: Vec<Interval> = vec![Interval::from_int_prec(-1, prec)];
    if n >= 2 {
        let dp = Upoly::legendre(n).derivative();
        zs.extend(dp.real_roots(&int(-1), &int(1), prec + 8).into_iter().map(|z| z.round_to(prec)));
    }
    zs.push(Interval::from_int_prec(1, prec));
    zs.into_iter()
        .map(|z| {
            let a = (one.clone() - z.clone()) * half.clone();
            let b = (one.clone() + z) * half.clone();
            (a, b)
        })
        .collect()
}

/// Degree-5 edge interior nodes from z = ±√((7±2√7)/21).
pub fn deg5_edge_interior(prec: u32) -> Vec<(Interval, Interval)> {
    let work = prec + 16;
    let i = |n: i64| Interval::from_int_prec(n, work);
    let s7 = i(7).sqrt().expect("positive");
    let inner = |sign: i64| (i(7) + i(2 * sign) * s7.clone()).checked_div(&i(21)).expect("nonzero").sqrt().expect("positive");
    let z_small = inner(-1);
    let z_big = inner(1);
    let half = Interval::from_rational_prec(&rat(1, 2), work);
    // decreasing first coordinate: z = −z_big, −z_small, z_small, z_big
    [-z_big.clone(), -z_small.clone(), z_small, z_big]
        .into_iter()
        .map(|z| {
            let a = (i(1) - z.clone()) * half.clone();
            let b = (i(1) + z) * half.clone();
            (a.round_to(prec), b.round_to(prec))
        })
        .collect()
}

/// Relative-interior pattern of the degree-n construction on a k-face,
/// n ≤ 4.
pub fn local_pattern_exact(n: u32, k: usize) -> Vec<Vec<AlgebraicScalar>> {
    let one = AlgebraicScalar::one();
    let centroid = |m: usize| vec![vec![alg(rat(1, m as i64)); m]];
    match (n, k) {
        (_, 0) => vec![vec![one]],
        (_, 1) => {
            let nodes = edge_nodes_exact(n).expect("n ≤ 4");
            nodes[1..nodes.len() - 1].iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect()
        }
        (3, 2) => centroid(3),
        (4, 2) => apex_perms(&deg4_triangle_apex(), &deg4_triangle_side(), 3),
        (4, 3) => centroid(4),
        _ => Vec::new(),
    }
}

/// Free parameters of the degree-5 construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Deg5Params {
    /// 2-face points (u, u, 1−2u) and permutations.
    pub u: Interval,
    /// 2-face points (v, v, 1−2v) and permutations.
    pub v: Interval,
    /// 3-face points (1−3w, w, w, w) and permutations.
    pub w: AlgebraicScalar,
}

/// Seeds identifying the chosen pair of roots of [`deg5_q_polynomial`].
pub const DEG5_U_SEED: f64 = 0.148019471315134;
pub const DEG5_V_SEED: f64 = 0.420825539292557;

/// The degree-10 eliminant whose roots give the 2-face parameters.
pub fn deg5_q_polynomial() -> Upoly {
    Upoly::from_ints(&[
        5, -235, 4649, -51415, 354286, -1598001, 4800577, -9523289, 11981963, -8660340, 2737800,
    ])
}

/// Root of `q` in (0, 1/2) closest to `seed`, refined to `bits` bits.
pub fn refine_root_near(q: &Upoly, seed: f64, bits: u32) -> Interval {
    let roots = q.real_roots(&int(0), &rat(1, 2), bits);
    roots
        .into_iter()
        .min_by(|a, b| (a.mid_f64() - seed).abs().total_cmp(&(b.mid_f64() - seed).abs()))
        .expect("q has roots in (0, 1/2)")
}

impl Deg5Params {
    /// Roots of q nearest the seeds, enclosed at `prec` bits, and
    /// w = (9−√5)/38. The default-precision value is computed once.
    pub fn canonical(prec: u32) -> Deg5Params {
        static CACHE: OnceLock<Deg5Params> = OnceLock::new();
        if prec <= DEFAULT_PRECISION {
            let p = CACHE.get_or_init(|| Self::compute(DEFAULT_PRECISION));
            return Deg5Params { u: p.u.round_to(prec), v: p.v.round_to(prec), w: p.w.clone() };
        }
        Self::compute(prec)
    }

    fn compute(prec: u32) -> Deg5Params {
        let q = deg5_q_polynomial();
        Deg5Params {
            u: refine_root_near(&q, DEG5_U_SEED, prec + 8).round_to(prec),
            v: refine_root_near(&q, DEG5_V_SEED, prec + 8).round_to(prec),
            w: deg5_w_minus(),
        }
    }

    pub fn with_w(mut self, w: AlgebraicScalar) -> Self {
        self.w = w;
        self
    }
}

/// Relative-interior pattern of F₅ on a k-face.
pub fn local_pattern_deg5(k: usize, params: &Deg5Params, prec: u32) -> Vec<Vec<Interval>> {
    let i = |n: i64| Interval::from_int_prec(n, prec);
    match k {
        0 => vec![vec![i(1)]],
        1 => deg5_edge_interior(prec).into_iter().map(|(a, b)| vec![a, b]).collect(),
        2 => {
            let mut out = Vec::new();
            for p in [&params.u, &params.v] {
                let p = p.to_interval(prec);
                let apex = i(1) - i(2) * p.clone();
                out.extend(apex_perms(&apex, &p, 3));
            }
            out
        }
        3 => {
            let w = params.w.enclose(prec);
            let apex = (AlgebraicScalar::one() - params.w.scale(&int(3))).enclose(prec);
            // apex first, as in (1−3w, w, w, w)
            (0..4).map(|a| (0..4).map(|j| if j == a { apex.clone() } else { w.clone() }).collect()).collect()
        }
        4 => vec![vec![Interval::from_rational_prec(&rat(1, 5), prec); 5]],
        _ => Vec::new(),
    }
}

/// Exact candidate set for n ≤ 4.
pub fn fekete_candidate_exact(n: u32, d: usize) -> Result<PointSet<AlgebraicScalar>> {
    check_args(n, d)?;
    if n == 5 {
        return Err(Error::Invalid("degree 5 coordinates are not exact; use fekete_candidate_deg5".into()));
    }
    Ok(assemble(n, d, |k| local_pattern_exact(n, k)))
}

/// Degree-5 candidate set in interval coordinates.
pub fn fekete_candidate_deg5(d: usize, params: &Deg5Params, prec: u32) -> Result<PointSet<Interval>> {
    check_args(5, d)?;
    Ok(assemble(5, d, |k| local_pattern_deg5(k, params, prec)))
}

/// F_n on S_d: exact for n ≤ 4, intervals at the default precision with the
/// canonical parameters for n = 5.
pub fn fekete_candidate(n: u32, d: usize) -> Result<CandidateSet> {
    check_args(n, d)?;
    if n == 5 {
        Ok(CandidateSet::Numeric(fekete_candidate_deg5(d, &Deg5Params::canonical(DEFAULT_PRECISION), DEFAULT_PRECISION)?))
    } else {
        Ok(CandidateSet::Exact(fekete_candidate_exact(n, d)?))
    }
}

/// The d+1 vertices, or the C(d+1, 2) edge midpoints, for counterexample
/// comparisons in degree one.
pub fn vertices(d: usize) -> PointSet<AlgebraicScalar> {
    assemble(1, d, |k| local_pattern_exact(1, k))
}

pub fn edge_midpoints(d: usize) -> PointSet<AlgebraicScalar> {
    let m = d + 1;
    let pts: Vec<BaryPoint<AlgebraicScalar>> = faces(m, 2)
        .into_iter()
        .map(|f| {
            let mut c = vec![AlgebraicScalar::zero(); m];
            c[f[0]] = alg(rat(1, 2));
            c[f[1]] = alg(rat(1, 2));
            BaryPoint::new(c)
        })
        .collect();
    PointSet::from_points(1, d, pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinalities() {
        assert_eq!(cardinality(5, 4), 126);
        assert_eq!(cardinality(0, 7), 1);
        for d in 1..=8 {
            let m = d as u64 + 1;
            assert_eq!(cardinality(3, d), m + 2 * binomial(m, 2) + binomial(m, 3));
        }
    }

    #[test]
    fn small_sets() {
        let f1 = fekete_candidate_exact(1, 3).unwrap();
        assert_eq!(f1.len(), 4);
        assert!(f1.face_tags().iter().all(|t| t.len() == 1));
        assert_eq!(fekete_candidate_exact(4, 2).unwrap().len(), 15);
        assert!(fekete_candidate_exact(6, 2).is_err());
        assert!(fekete_candidate_exact(2, 0).is_err());
    }

    #[test]
    fn deg5_counts_by_face() {
        let p = fekete_candidate_deg5(3, &Deg5Params::canonical(96), 96).unwrap();
        assert_eq!(p.len(), 56);
        let count = |s: usize| p.face_tags().iter().filter(|t| t.len() == s).count();
        assert_eq!((count(1), count(2), count(3), count(4)), (4, 24, 24, 4));
        p.validate().unwrap();
    }

    #[test]
    fn exact_edge_nodes_match_legendre() {
        for n in 2..=4 {
            let exact = edge_nodes_exact(n).unwrap();
            let num = edge_nodes(n, 80);
            assert_eq!(exact.len(), num.len());
            for (e, x) in exact.iter().zip(&num) {
                assert!(x.0.encloses(&e.0.enclose(60)) || x.0.overlaps(&e.0.enclose(60)));
            }
        }
        let five = edge_nodes(5, 100);
        for (a, b) in deg5_edge_interior(100).iter().zip(&five[1..5]) {
            assert!(a.0.overlaps(&b.0));
        }
    }

    #[test]
    fn canonical_roots_match_seeds() {
        let p = Deg5Params::canonical(128);
        assert!((p.u.mid_f64() - DEG5_U_SEED).abs() < 1e-14);
        assert!((p.v.mid_f64() - DEG5_V_SEED).abs() < 1e-14);
    }

    #[test]
    fn faces_lex() {
        assert_eq!(faces(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
