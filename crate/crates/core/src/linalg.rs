//! Dense and sparse elimination over the scalar domains.
//!
//! * [`bareiss_det`] fraction-free determinant over any exact [`Domain`],
//! * [`minor_det`] division-free determinant by memoised Laplace expansion,
//! * [`lu_det`] partial-pivoting LU for floats and intervals,
//! * [`sparse_inverse`] Gauss–Jordan on sparse rows, returning the inverse
//!   together with the determinant.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::scalar::{Domain, Field, Ring};
use crate::{Error, Result};

pub type Matrix<R> = Vec<Vec<R>>;

fn check_square<R>(m: &Matrix<R>) {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix is not square");
}

/// Fraction-free Gaussian elimination. Returns exact zero for singular input.
pub fn bareiss_det<R: Domain>(m: &Matrix<R>) -> R {
    check_square(m);
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss quotient is exact");
            }
            a[i][k] = R::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Determinant by Laplace expansion memoised over column subsets; needs only
/// ring operations. Cost is O(2ⁿ·n), intended for n ≤ 16.
pub fn minor_det<R: Ring>(m: &Matrix<R>) -> R {
    check_square(m);
    let n = m.len();
    assert!(n <= 20, "minor expansion is exponential in the size");
    // level[mask] = det of rows 0..popcount(mask) restricted to columns `mask`
    let mut level: FxHashMap<u32, R> = FxHashMap::default();
    level.insert(0, R::one());
    for row in 0..n {
        let mut next: FxHashMap<u32, R> = FxHashMap::default();
        for (mask, val) in &level {
            if val.is_zero() {
                continue;
            }
            for col in 0..n {
                if mask & (1 << col) != 0 || m[row][col].is_zero() {
                    continue;
                }
                // sign from the number of chosen columns to the right of `col`
                let after = (mask >> (col + 1)).count_ones();
                let mut term = val.mul_ref(&m[row][col]);
                if after % 2 == 1 {
                    term = -term;
                }
                let key = mask | (1 << col);
                match next.get_mut(&key) {
                    Some(slot) => *slot += &term,
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        level = next;
    }
    level.remove(&((1u32 << n) - 1)).unwrap_or_else(R::zero)
}

/// LU with partial pivoting by [`Field::pivot_score`]. An exactly singular
/// matrix gives zero; an interval matrix whose remaining pivots all straddle
/// zero gives an undetermined-sign error.
pub fn lu_det<F: Field>(m: &Matrix<F>) -> Result<F> {
    check_square(m);
    let n = m.len();
    let mut a = m.clone();
    let mut det = F::one();
    for k in 0..n {
        let (best, score) = (k..n)
            .map(|i| (i, a[i][k].pivot_score()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if score <= 0.0 {
            if (k..n).all(|i| a[i][k].is_zero()) {
                return Ok(F::zero());
            }
            return Err(Error::UndeterminedSign(format!("no usable pivot in column {k}")));
        }
        if best != k {
            a.swap(k, best);
            det = -det;
        }
        let inv = a[k][k].inv()?;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].mul_ref(&inv);
            for j in k + 1..n {
                let t = f.mul_ref(&a[k][j]);
                a[i][j] -= &t;
            }
            a[i][k] = F::zero();
        }
        det *= &a[k][k];
    }
    Ok(det)
}

/// Result of sparse Gauss–Jordan elimination.
#[derive(Debug, Clone)]
pub struct SparseInverse<F> {
    /// Row-major inverse; row `j` of V⁻¹ as a sparse map col → value.
    pub rows: Vec<BTreeMap<usize, F>>,
    pub det: F,
}

impl<F: Ring> SparseInverse<F> {
    /// Column `i` of the inverse, densely.
    pub fn column(&self, i: usize) -> Vec<F> {
        self.rows.iter().map(|r| r.get(&i).cloned().unwrap_or_else(F::zero)).collect()
    }
}

type SparseRow<F> = BTreeMap<usize, F>;

/// Gauss–Jordan on sparse rows. Columns are taken in order of fewest
/// remaining nonzeros (cheap on the block-triangular Vandermonde matrices of
/// face-by-face point sets); pivots are the best-scoring entries in the
/// chosen column.
pub fn sparse_inverse<F: Field>(m: &Matrix<F>) -> Result<SparseInverse<F>> {
    check_square(m);
    let n = m.len();
    let mut left: Vec<SparseRow<F>> = m
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect())
        .collect();
    let mut right: Vec<SparseRow<F>> = (0..n).map(|i| BTreeMap::from([(i, F::one())])).collect();
    let mut row_done = vec![false; n];
    let mut col_done = vec![false; n];
    let mut pivots: Vec<(usize, usize, F)> = Vec::with_capacity(n);

    for _ in 0..n {
        let mut counts = vec![0usize; n];
        for (i, row) in left.iter().enumerate() {
            if row_done[i] {
                continue;
            }
            for &j in row.keys() {
                if !col_done[j] {
                    counts[j] += 1;
                }
            }
        }
        let col = (0..n).filter(|&j| !col_done[j]).min_by_key(|&j| (counts[j] == 0, counts[j], j)).unwrap();
        let mut best: Option<(usize, f64, usize)> = None;
        for (i, row) in left.iter().enumerate() {
            if row_done[i] {
                continue;
            }
            if let Some(x) = row.get(&col) {
                let s = x.pivot_score();
                if s <= 0.0 {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((_, bs, bn)) => s > bs * 1.0001 || (s >= bs / 1.0001 && row.len() < bn),
                };
                if better {
                    best = Some((i, s, row.len()));
                }
            }
        }
        let Some((prow, _, _)) = best else {
            if (0..n).all(|i| row_done[i] || !left[i].contains_key(&col)) {
                return Ok(SparseInverse { rows: Vec::new(), det: F::zero() });
            }
            return Err(Error::UndeterminedSign(format!("no usable pivot in column {col}")));
        };
        let pval = left[prow][&col].clone();
        let pinv = pval.inv()?;
        let prow_left = left[prow].clone();
        let prow_right = right[prow].clone();
        for i in 0..n {
            if i == prow {
                continue;
            }
            let Some(x) = left[i].get(&col) else { continue };
            let f = x.mul_ref(&pinv);
            axpy(&mut left[i], &f, &prow_left);
            left[i].remove(&col);
            axpy(&mut right[i], &f, &prow_right);
        }
        row_done[prow] = true;
        col_done[col] = true;
        pivots.push((prow, col, pval));
    }

    // det = sgn(row → col) · Π pivots
    let mut perm = vec![0usize; n];
    let mut det = F::one();
    for (r, c, p) in &pivots {
        perm[*r] = *c;
        det *= p;
    }
    if permutation_is_odd(&perm) {
        det = -det;
    }
    let mut rows: Vec<SparseRow<F>> = vec![BTreeMap::new(); n];
    for (r, c, p) in pivots {
        let inv = p.inv()?;
        rows[c] = std::mem::take(&mut right[r]).into_iter().map(|(k, v)| (k, v.mul_ref(&inv))).collect();
    }
    Ok(SparseInverse { rows, det })
}

/// row -= f · pivot
fn axpy<F: Ring>(row: &mut SparseRow<F>, f: &F, pivot: &SparseRow<F>) {
    for (j, v) in pivot {
        let t = f.mul_ref(v);
        let remove = match row.get_mut(j) {
            Some(slot) => {
                *slot -= &t;
                slot.is_zero()
            }
            None => {
                row.insert(*j, -t);
                false
            }
        };
        if remove {
            row.remove(j);
        }
    }
}

pub fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut odd = false;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// Aᵀ·A, dense.
pub fn gram<R: Ring>(a: &Matrix<R>) -> Matrix<R> {
    let n = a.first().map_or(0, Vec::len);
    let mut g = vec![vec![R::zero(); n]; n];
    for row in a {
        for i in 0..n {
            if row[i].is_zero() {
                continue;
            }
            for j in i..n {
                let t = row[i].mul_ref(&row[j]);
                g[i][j] += &t;
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            g[i][j] = g[j][i].clone();
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Upoly;
    use crate::scalar::{int, rat, Rational};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn three_methods_agree() {
        let m = q(&[&[2, -1, 0, 3], &[1, 0, 4, 1], &[0, 5, -2, 2], &[7, 1, 1, 0]]);
        let b = bareiss_det(&m);
        assert_eq!(b, minor_det(&m));
        assert_eq!(b, lu_det(&m).unwrap());
        assert_eq!(b, sparse_inverse(&m).unwrap().det);
    }

    #[test]
    fn singular_gives_zero() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(bareiss_det(&m), int(0));
        assert_eq!(sparse_inverse(&m).unwrap().det, int(0));
        assert_eq!(lu_det(&m).unwrap(), int(0));
    }

    #[test]
    fn inverse_is_inverse() {
        let m = q(&[&[0, 1, 0], &[3, 0, 1], &[1, 1, 1]]);
        let inv = sparse_inverse(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: Rational = (0..3).map(|k| &m[i][k] * inv.rows[k].get(&j).cloned().unwrap_or_default()).sum();
                assert_eq!(s, if i == j { int(1) } else { int(0) });
            }
        }
        assert_eq!(inv.det, rat(-2, 1));
    }

    #[test]
    fn polynomial_entries() {
        // [[x, 1], [1, x]] → x² − 1
        let x = Upoly::x();
        let one = Upoly::from_ints(&[1]);
        let m = vec![vec![x.clone(), one.clone()], vec![one, x]];
        assert_eq!(bareiss_det(&m), Upoly::from_ints(&[-1, 0, 1]));
        assert_eq!(minor_det(&m), Upoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn odd_permutations() {
        assert!(!permutation_is_odd(&[0, 1, 2]));
        assert!(permutation_is_odd(&[1, 0, 2]));
        assert!(!permutation_is_odd(&[1, 2, 0]));
    }
}
