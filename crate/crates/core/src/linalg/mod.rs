//! Dense linear algebra used by the spectral routines.

mod eigen;
mod matrix;

pub use eigen::{symmetric_eigen, symmetric_eigenvalues, SymmetricEigen};
pub use matrix::{dot, norm2, Matrix};

use crate::error::Result;

/// Singular values of a real matrix in descending order, read off the
/// positive half of the spectrum of the augmented matrix `[0 A; Aᵀ 0]`.
pub fn singular_values(a: &Matrix) -> Result<Vec<f64>> {
    let (m, n) = (a.rows(), a.cols());
    let aug = Matrix::from_fn(m + n, m + n, |i, j| match (i < m, j < m) {
        (true, false) => a[(i, j - m)],
        (false, true) => a[(j, i - m)],
        _ => 0.0,
    });
    let mut values = symmetric_eigenvalues(&aug)?;
    values.reverse();
    values.truncate(m.min(n));
    for v in values.iter_mut() {
        *v = v.max(0.0);
    }
    Ok(values)
}

/// Singular values (descending) of the complex matrix `re + i·im`, via the
/// real embedding `[re -im; im re]` whose singular values are doubled.
pub fn complex_singular_values(re: &Matrix, im: &Matrix) -> Result<Vec<f64>> {
    let (m, n) = (re.rows(), re.cols());
    let embed = Matrix::from_fn(2 * m, 2 * n, |i, j| {
        let (bi, ri) = (i / m, i % m);
        let (bj, rj) = (j / n, j % n);
        match (bi, bj) {
            (0, 0) | (1, 1) => re[(ri, rj)],
            (0, 1) => -im[(ri, rj)],
            _ => im[(ri, rj)],
        }
    });
    let doubled = singular_values(&embed)?;
    Ok(doubled.into_iter().step_by(2).collect())
}
