use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

type Exps = SmallVec<[u32; 12]>;

/// Exponent vector of a monomial λ^α. Ordered graded-lexicographically:
/// total degree first, then the exponent of λ₁, λ₂, … (larger first).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    degree: u32,
    exps: Exps,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        MultiIndex { degree: exps.iter().sum(), exps: Exps::from_vec(exps) }
    }

    pub fn zero(nvars: usize) -> Self {
        MultiIndex { degree: 0, exps: smallvec::smallvec![0; nvars] }
    }

    /// e_i scaled by `power`.
    pub fn unit(nvars: usize, i: usize, power: u32) -> Self {
        let mut exps: Exps = smallvec::smallvec![0; nvars];
        exps[i] = power;
        MultiIndex { degree: power, exps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn from_slice(exps: &[u32]) -> Self {
        MultiIndex { degree: exps.iter().sum(), exps: Exps::from_slice(exps) }
    }

    /// Copy with exponent `i` changed to `e`.
    pub fn with_exp(&self, i: usize, e: u32) -> Self {
        let mut exps = self.exps.clone();
        let degree = self.degree - exps[i] + e;
        exps[i] = e;
        MultiIndex { degree, exps }
    }

    pub fn get(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn bump(&self, i: usize) -> MultiIndex {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        MultiIndex { degree: self.degree + 1, exps }
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn permuted(&self, perm: &[usize]) -> MultiIndex {
        let mut exps: Exps = smallvec::smallvec![0; self.exps.len()];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[perm[i]] = e;
        }
        MultiIndex { degree: self.degree, exps }
    }

    /// All exponent vectors of total degree `degree` in `nvars` variables,
    /// in descending graded-lex order (λ₁^degree first).
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<MultiIndex> {
        fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == nvars {
                prefix.push(left);
                out.push(MultiIndex::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(nvars, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(MultiIndex::new(vec![]));
            }
            return out;
        }
        rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.exps.as_slice().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = MultiIndex::new(vec![2, 0]);
        let b = MultiIndex::new(vec![1, 1]);
        let c = MultiIndex::new(vec![0, 3]);
        assert!(b < a);
        assert!(a < c);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(MultiIndex::all_of_degree(3, 4).len(), 15);
        assert_eq!(MultiIndex::all_of_degree(5, 5).len(), 126);
        let first = &MultiIndex::all_of_degree(3, 2)[0];
        assert_eq!(first.exps(), &[2, 0, 0]);
    }
}
