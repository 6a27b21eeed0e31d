//! Exhaustive degree-one Fekete search on a triangular grid.

use serde::Serialize;

use crate::scalar::{rat, render_rational};

#[derive(Debug, Clone, Serialize)]
pub struct BruteForceReport {
    /// Grid points per edge.
    pub grid: u32,
    pub candidates: usize,
    pub triples: u64,
    /// Barycentric coordinates of the best triple, as exact fractions.
    pub best: Vec<Vec<String>>,
    /// |det| of the best triple, for barycentric rows.
    pub best_abs_det: String,
    /// Number of unordered triples attaining the maximum.
    pub optimal_count: u64,
    pub best_is_vertices: bool,
    /// |det(vertices)| / |det(midpoints)|.
    pub vertex_midpoint_ratio: String,
    /// A triple with a repeated direction (two vertices and the midpoint between them) has det 0.
    pub collinear_det_zero: bool,
}

fn det3(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// For degree one the Vandermonde matrix in the barycentric basis is the
/// 3×3 matrix of barycentric rows, so the search maximises that determinant
/// over all triples of grid points (i, j, k)/(grid − 1).
pub fn brute_force_fekete_deg1(grid: u32) -> BruteForceReport {
    assert!(grid >= 2, "grid needs at least the two endpoints of an edge");
    let den = (grid - 1) as i64;
    let mut pts: Vec<[i64; 3]> = Vec::new();
    for i in 0..=den {
        for j in 0..=(den - i) {
            pts.push([i, j, den - i - j]);
        }
    }
    let m = pts.len();
    let mut best = 0i64;
    let mut best_triple = (0, 0, 0);
    let mut count = 0u64;
    let mut triples = 0u64;
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                triples += 1;
                let v = det3(pts[a], pts[b], pts[c]).abs();
                if v > best {
                    best = v;
                    best_triple = (a, b, c);
                    count = 1;
                } else if v == best {
                    count += 1;
                }
            }
        }
    }
    let (a, b, c) = best_triple;
    let chosen = [pts[a], pts[b], pts[c]];
    let is_vertex = |p: &[i64; 3]| p.iter().filter(|&&x| x == den).count() == 1;
    let vert = det3([den, 0, 0], [0, den, 0], [0, 0, den]).abs();
    let h = den / 2;
    // midpoints exist on the grid only for an odd number of points per edge
    let mid = if den % 2 == 0 { det3([h, h, 0], [h, 0, h], [0, h, h]).abs() } else { 0 };
    let cube = den * den * den;
    BruteForceReport {
        grid,
        candidates: m,
        triples,
        best: chosen.iter().map(|p| p.iter().map(|&x| render_rational(&rat(x, den))).collect()).collect(),
        best_abs_det: render_rational(&rat(best, cube)),
        optimal_count: count,
        best_is_vertices: chosen.iter().all(is_vertex) && count == 1,
        vertex_midpoint_ratio: if mid == 0 { "undefined".into() } else { render_rational(&rat(vert, mid)) },
        collinear_det_zero: den % 2 == 0 && det3([den, 0, 0], [h, h, 0], [0, den, 0]) == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_finds_vertices() {
        let r = brute_force_fekete_deg1(5);
        assert!(r.best_is_vertices);
        assert_eq!(r.best_abs_det, "1");
        assert_eq!(r.vertex_midpoint_ratio, "4");
        assert!(r.collinear_det_zero);
    }
}
