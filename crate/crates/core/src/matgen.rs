//! Toeplitz, exchange, flipped and circulant matrices generated by Fourier
//! coefficients.

use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::symbol::{FourierCoeffs, TOL_COEFF};

/// `T_n(f)` stored by its `2n - 1` diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzMatrix {
    n: usize,
    /// `f_k` for `k = -(n-1)..=(n-1)`.
    diagonals: Vec<Complex64>,
    real: bool,
}

impl ToeplitzMatrix {
    /// Builds `T_n` from explicit diagonals `f_{-(n-1)}..f_{n-1}`. Imaginary
    /// parts within `TOL_COEFF` of zero (relative to the largest diagonal)
    /// are dropped so the matrix is stored as exactly real.
    pub fn from_diagonals(mut diagonals: Vec<Complex64>) -> Result<Self> {
        if diagonals.is_empty() || diagonals.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument("need 2n-1 diagonals".into()));
        }
        let n = diagonals.len().div_ceil(2);
        let scale = diagonals.iter().fold(1.0f64, |m, c| m.max(c.norm()));
        let real = diagonals.iter().all(|c| c.im.abs() <= TOL_COEFF * scale);
        if real {
            for c in &mut diagonals {
                c.im = 0.0;
            }
        }
        Ok(ToeplitzMatrix { n, diagonals, real })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn diagonals(&self) -> &[Complex64] {
        &self.diagonals
    }

    /// `f_k` for `|k| < n`.
    pub fn diagonal(&self, k: i64) -> Complex64 {
        self.diagonals[(k + self.n as i64 - 1) as usize]
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.diagonal(i as i64 - j as i64)
    }

    /// Real part as a dense matrix.
    pub fn dense(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| self.entry(i, j).re)
    }

    pub fn dense_imag(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| self.entry(i, j).im)
    }

    /// Real symmetric check: real coefficients with `f_k = f_{-k}`.
    pub fn is_symmetric(&self) -> bool {
        self.real && (1..self.n as i64).all(|k| self.diagonal(k).re == self.diagonal(-k).re)
    }

    /// `T_n(f) x` for real `T`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j).re * x[j]).sum())
            .collect()
    }
}

/// `H_n(f) = Y_n T_n(f)`, real case.
#[derive(Debug, Clone, PartialEq)]
pub struct FlippedMatrix {
    n: usize,
    dense: Matrix,
}

impl FlippedMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn dense(&self) -> &Matrix {
        &self.dense
    }

    pub fn into_dense(self) -> Matrix {
        self.dense
    }
}

/// Builds `T_n(f)`. Coefficients beyond the computed range may be omitted
/// only when the symbol is a trigonometric polynomial of lower degree.
pub fn toeplitz(coeffs: &FourierCoeffs, n: usize) -> Result<ToeplitzMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let m = n as i64 - 1;
    let diagonals = (-m..=m)
        .map(|k| {
            coeffs.get(k).ok_or(Error::InsufficientCoefficients {
                n,
                available: coeffs.k_max() as usize,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ToeplitzMatrix::from_diagonals(diagonals)
}

/// The exchange matrix `Y_n`.
pub fn exchange(n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| if i + j + 1 == n { 1.0 } else { 0.0 })
}

/// Row reversal of a real `T`. Entry `(i, j)` is read from the diagonal
/// `n-1-i-j` directly, so the result is symmetric bit for bit.
pub fn flipped(t: &ToeplitzMatrix) -> Result<FlippedMatrix> {
    if !t.is_real() {
        return Err(Error::ComplexCoefficients);
    }
    let n = t.order();
    let dense = Matrix::from_fn(n, n, |i, j| t.diagonal(n as i64 - 1 - i as i64 - j as i64).re);
    Ok(FlippedMatrix { n, dense })
}

/// Wrap-around circulant of a trigonometric polynomial of degree `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct Circulant {
    n: usize,
    degree: usize,
    first_column: Vec<Complex64>,
}

impl Circulant {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn first_column(&self) -> &[Complex64] {
        &self.first_column
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.first_column[(i + self.n - j) % self.n]
    }

    pub fn dense(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| self.entry(i, j).re)
    }

    /// Eigenvalue for the Fourier vector `(e^{-2πi jk/n})_k`, which is `f(2πj/n)`.
    pub fn eigenvalue(&self, j: usize) -> Complex64 {
        let w = 2.0 * std::f64::consts::PI * j as f64 / self.n as f64;
        self.first_column
            .iter()
            .enumerate()
            .map(|(m, c)| c * Complex64::from_polar(1.0, w * m as f64))
            .sum()
    }

    /// Rows of `T - C` holding at least one nonzero entry, an upper bound for
    /// its rank.
    pub fn correction_rows(&self, t: &ToeplitzMatrix) -> Result<usize> {
        if t.order() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: t.order(),
            });
        }
        Ok((0..self.n)
            .filter(|&i| (0..self.n).any(|j| t.entry(i, j) != self.entry(i, j)))
            .count())
    }
}

pub fn circulant(coeffs: &FourierCoeffs, n: usize) -> Result<Circulant> {
    let r = coeffs.support().ok_or(Error::NotTrigPoly)?;
    if n < 2 * r + 1 {
        return Err(Error::CirculantTooSmall { n, r });
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut col = vec![zero; n];
    for k in 0..=r as i64 {
        col[k as usize] = coeffs.get(k).unwrap_or(zero);
    }
    for k in 1..=r {
        col[n - k] = coeffs.get(-(k as i64)).unwrap_or(zero);
    }
    Ok(Circulant {
        n,
        degree: r,
        first_column: col,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixHeader {
    pub order: usize,
    pub symbol: String,
    pub k_min: i64,
    pub k_max: i64,
}

/// Writes a JSON header line followed by one CSV row per matrix row.
pub fn write_matrix<W: Write>(mut w: W, header: &MatrixHeader, m: &Matrix) -> std::io::Result<()> {
    writeln!(w, "{}", serde_json::to_string(header).map_err(std::io::Error::other)?)?;
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}
