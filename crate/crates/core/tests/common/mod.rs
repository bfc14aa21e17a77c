//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;

use flipped_toeplitz::linalg::Matrix;

pub fn to_nalgebra(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

/// Ascending eigenvalues of a symmetric matrix.
pub fn eigenvalues(m: &Matrix) -> Vec<f64> {
    let mut v: Vec<f64> = to_nalgebra(m).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Descending singular values.
pub fn singular_values(m: &Matrix) -> Vec<f64> {
    let mut v: Vec<f64> = to_nalgebra(m).svd(false, false).singular_values.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn complex_singular_values(re: &Matrix, im: &Matrix) -> Vec<f64> {
    let n = re.rows();
    let m = DMatrix::from_fn(n, re.cols(), |i, j| Complex64::new(re[(i, j)], im[(i, j)]));
    let mut v: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Adaptive Simpson quadrature on 37 equal panels; the panel count keeps the
/// initial nodes from aliasing with integer-frequency integrands.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    const PANELS: usize = 37;
    let h = (b - a) / PANELS as f64;
    (0..PANELS)
        .map(|i| simpson_panel(f, a + i as f64 * h, if i + 1 == PANELS { b } else { a + (i + 1) as f64 * h }, tol / PANELS as f64))
        .sum()
}

fn simpson_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Minimum over all permutations of `max_i |a_i − b_{σ(i)}|`.
pub fn brute_force_bottleneck(a: &[f64], b: &[f64]) -> f64 {
    fn go(a: &[f64], b: &mut Vec<f64>, k: usize, best: &mut f64, cur: f64) {
        if cur >= *best {
            return;
        }
        if k == a.len() {
            *best = cur;
            return;
        }
        for j in k..b.len() {
            b.swap(k, j);
            go(a, b, k + 1, best, cur.max((a[k] - b[k]).abs()));
            b.swap(k, j);
        }
    }
    let mut best = f64::INFINITY;
    go(a, &mut b.to_vec(), 0, &mut best, 0.0);
    best
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}
