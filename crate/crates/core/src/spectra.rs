//! Spectra of real symmetric `T_n(f)` and `H_n(f)` through the
//! centrosymmetric block split.

use std::f64::consts::FRAC_1_SQRT_2;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{norm2, singular_values, symmetric_eigen, symmetric_eigenvalues, Matrix, SymmetricEigen};
use crate::matgen::{flipped, FlippedMatrix, ToeplitzMatrix};

/// Relative residual tolerance, scaled by `‖T‖`.
pub const TOL_RES: f64 = 1e-11;
/// Tolerance for the symmetric/skew-symmetric character of eigenvectors.
pub const TOL_VEC: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Symmetric,
    Skew,
}

impl Class {
    /// Class of the 1-based pairing index `i`.
    pub fn of_index(i: usize) -> Class {
        if i % 2 == 1 {
            Class::Symmetric
        } else {
            Class::Skew
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Class::Symmetric => 1.0,
            Class::Skew => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Class::Symmetric => "symmetric",
            Class::Skew => "skew",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairRecord {
    /// 1-based index.
    pub i: usize,
    pub lam_t: f64,
    pub lam_h: f64,
    pub class: Class,
}

#[derive(Debug, Clone)]
pub struct SpectralPairing {
    pub n: usize,
    pub records: Vec<PairRecord>,
    /// Orthonormal eigenvectors, column `i - 1` belonging to record `i`.
    pub eigvecs: Option<Matrix>,
}

impl SpectralPairing {
    pub fn lam_t(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.lam_t).collect()
    }

    pub fn lam_h(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.lam_h).collect()
    }

    /// Eigenvalues of `T` belonging to one class, in pairing order.
    pub fn class_values(&self, class: Class) -> Vec<f64> {
        self.records.iter().filter(|r| r.class == class).map(|r| r.lam_t).collect()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "i,lamT,lamH,class")?;
        for r in &self.records {
            writeln!(w, "{},{:.16e},{:.16e},{}", r.i, r.lam_t, r.lam_h, r.class.as_str())?;
        }
        Ok(())
    }
}

/// Blocks of a real centrosymmetric matrix in the symmetric and skew bases.
pub fn split_blocks(a: &Matrix) -> (Matrix, Matrix) {
    let n = a.rows();
    let h = n / 2;
    let odd = n % 2 == 1;
    let m = |i: usize, j: usize| a[(i, j)];
    let r = |i: usize| n - 1 - i;
    let sym = Matrix::from_fn(h + usize::from(odd), h + usize::from(odd), |i, j| match (i < h, j < h) {
        (true, true) => 0.5 * (m(i, j) + m(i, r(j)) + m(r(i), j) + m(r(i), r(j))),
        (true, false) => FRAC_1_SQRT_2 * (m(i, h) + m(r(i), h)),
        (false, true) => FRAC_1_SQRT_2 * (m(h, j) + m(h, r(j))),
        (false, false) => m(h, h),
    });
    let skew = Matrix::from_fn(h, h, |i, j| 0.5 * (m(i, j) - m(i, r(j)) - m(r(i), j) + m(r(i), r(j))));
    (sym, skew)
}

/// Eigendecomposition of a real symmetric `T_n(f)` through its symmetric and
/// skew blocks, interleaved so that odd indices carry symmetric eigenvectors.
pub fn split_eigendecompose(t: &ToeplitzMatrix, with_vectors: bool, exec: Execution) -> Result<SpectralPairing> {
    if !t.is_symmetric() {
        return Err(Error::NotSymmetric(asymmetry_of(t)));
    }
    let n = t.order();
    let (sym, skew) = split_blocks(&t.dense());
    let solve = |m: &Matrix| -> Result<SymmetricEigen> {
        if with_vectors {
            symmetric_eigen(m)
        } else {
            symmetric_eigenvalues(m).map(|values| SymmetricEigen { values, vectors: None })
        }
    };
    let (es, ek) = exec.join(|| solve(&sym), || solve(&skew));
    let (es, ek) = (es?, ek?);

    let records: Vec<PairRecord> = (1..=n)
        .map(|i| {
            let class = Class::of_index(i);
            let lam_t = match class {
                Class::Symmetric => es.values[(i - 1) / 2],
                Class::Skew => ek.values[i / 2 - 1],
            };
            PairRecord {
                i,
                lam_t,
                lam_h: class.sign() * lam_t,
                class,
            }
        })
        .collect();

    let eigvecs = with_vectors.then(|| {
        let (ys, yk) = (es.vectors.as_ref().unwrap(), ek.vectors.as_ref().unwrap());
        let h = n / 2;
        let mut v = Matrix::zeros(n, n);
        for rec in &records {
            let col = rec.i - 1;
            let (y, k) = match rec.class {
                Class::Symmetric => (ys, (rec.i - 1) / 2),
                Class::Skew => (yk, rec.i / 2 - 1),
            };
            for p in 0..h {
                v[(p, col)] = FRAC_1_SQRT_2 * y[(p, k)];
                v[(n - 1 - p, col)] = rec.class.sign() * FRAC_1_SQRT_2 * y[(p, k)];
            }
            if n % 2 == 1 && rec.class == Class::Symmetric {
                v[(h, col)] = y[(h, k)];
            }
        }
        v
    });

    Ok(SpectralPairing { n, records, eigvecs })
}

fn asymmetry_of(t: &ToeplitzMatrix) -> f64 {
    (1..t.order() as i64).fold(0.0f64, |m, k| m.max((t.diagonal(k) - t.diagonal(-k)).norm()))
}

/// Eigenvalues of `H` in ascending order by a direct dense solve.
pub fn eig_flipped(h: &FlippedMatrix) -> Result<Vec<f64>> {
    symmetric_eigenvalues(h.dense())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularReport {
    /// Singular values of `T`, descending.
    pub sigma_t: Vec<f64>,
    /// Absolute eigenvalues of `H`, descending.
    pub abs_lam_h: Vec<f64>,
    pub max_dev: f64,
}

impl SingularReport {
    pub fn norm(&self) -> f64 {
        self.sigma_t.first().copied().unwrap_or(0.0)
    }
}

/// Compares the singular values of a real `T` with `|λ(H)|`.
pub fn singular_cross_check(t: &ToeplitzMatrix) -> Result<SingularReport> {
    let h = flipped(t)?;
    let sigma_t = singular_values(&t.dense())?;
    let mut abs_lam_h: Vec<f64> = eig_flipped(&h)?.into_iter().map(f64::abs).collect();
    abs_lam_h.sort_by(|a, b| b.total_cmp(a));
    let max_dev = sigma_t
        .iter()
        .zip(&abs_lam_h)
        .fold(0.0f64, |m, (s, l)| m.max((s - l).abs()));
    Ok(SingularReport {
        sigma_t,
        abs_lam_h,
        max_dev,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularVectorResiduals {
    /// `max ‖H²(Y u_i) − λ_i² Y u_i‖` over left singular vectors.
    pub left: f64,
    /// `max ‖H² v_i − λ_i² v_i‖` over right singular vectors.
    pub right: f64,
    /// `‖T‖₂`.
    pub norm: f64,
}

/// Checks that the (flipped) singular vectors of a real `T` are eigenvectors
/// of `H²` with eigenvalues `λ_i(H)²`, pairing both lists by decreasing
/// magnitude.
pub fn singvec_eigvec_check(t: &ToeplitzMatrix) -> Result<SingularVectorResiduals> {
    let h = flipped(t)?;
    let a = t.dense();
    let at = a.transpose();
    let n = t.order();

    let right = symmetric_eigen(&at.matmul(&a))?;
    let left = symmetric_eigen(&a.matmul(&at))?;
    let sigma: Vec<f64> = right.values.iter().rev().map(|v| v.max(0.0).sqrt()).collect();
    let mut lam: Vec<f64> = eig_flipped(&h)?;
    lam.sort_by(|x, y| y.abs().total_cmp(&x.abs()));

    let norm = sigma.first().copied().unwrap_or(0.0);
    // Squared values carry O(ε‖T‖²) error; their square roots do not.
    let tol = 1e-9 * (norm * norm).max(1.0);
    let worst = sigma.iter().zip(&lam).fold(0.0f64, |m, (s, l)| m.max((s * s - l * l).abs()));
    if worst > tol {
        return Err(Error::OrderingMismatch(worst));
    }

    let h2 = h.dense().matmul(h.dense());
    let residual = |vectors: &Matrix, flip: bool| {
        (0..n).fold(0.0f64, |m, i| {
            let mut x = vectors.column(n - 1 - i);
            if flip {
                x.reverse();
            }
            let hx = h2.matvec(&x);
            let l2 = lam[i] * lam[i];
            let r: Vec<f64> = hx.iter().zip(&x).map(|(a, b)| a - l2 * b).collect();
            m.max(norm2(&r))
        })
    };
    Ok(SingularVectorResiduals {
        left: residual(left.vectors.as_ref().unwrap(), true),
        right: residual(right.vectors.as_ref().unwrap(), false),
        norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::matgen::{exchange, toeplitz};
    use crate::symbol::FourierCoeffs;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn iga() -> FourierCoeffs {
        FourierCoeffs::real_even(&[2.0 / 3.0, -1.0 / 8.0, -1.0 / 5.0, -1.0 / 120.0])
    }

    #[test]
    fn constant_symbol_pairing() {
        let t = toeplitz(&FourierCoeffs::real_even(&[3.0]), 5).unwrap();
        let p = split_eigendecompose(&t, false, Execution::Sequential).unwrap();
        assert_eq!(p.lam_t(), vec![3.0; 5]);
        assert_eq!(p.lam_h(), vec![3.0, -3.0, 3.0, -3.0, 3.0]);
        let classes: Vec<Class> = p.records.iter().map(|r| r.class).collect();
        use Class::*;
        assert_eq!(classes, vec![Symmetric, Skew, Symmetric, Skew, Symmetric]);
    }

    #[test]
    fn two_cos_pairing() {
        let t = toeplitz(&FourierCoeffs::real_even(&[0.0, 1.0]), 3).unwrap();
        let p = split_eigendecompose(&t, true, Execution::Sequential).unwrap();
        let lt = p.lam_t();
        assert!((lt[0] + SQRT2).abs() < 1e-14);
        assert!(lt[1].abs() < 1e-14);
        assert!((lt[2] - SQRT2).abs() < 1e-14);
        let mut sym = p.class_values(Class::Symmetric);
        sym.sort_by(f64::total_cmp);
        assert!((sym[0] + SQRT2).abs() < 1e-14 && (sym[1] - SQRT2).abs() < 1e-14);
    }

    #[test]
    fn iga_residuals_and_classes() {
        for n in [7, 8] {
            let t = toeplitz(&iga(), n).unwrap();
            let p = split_eigendecompose(&t, true, Execution::Parallel).unwrap();
            let v = p.eigvecs.as_ref().unwrap();
            let norm = p.lam_t().iter().fold(0.0f64, |m, x| m.max(x.abs()));
            for r in &p.records {
                let x = v.column(r.i - 1);
                let tx = t.matvec(&x);
                let res: Vec<f64> = tx.iter().zip(&x).map(|(a, b)| a - r.lam_t * b).collect();
                assert!(norm2(&res) <= TOL_RES * norm);
                let mut y = x.clone();
                y.reverse();
                let dev: Vec<f64> = y.iter().zip(&x).map(|(a, b)| a - r.class.sign() * b).collect();
                assert!(norm2(&dev) <= TOL_VEC);
            }
            let n_sym = p.records.iter().filter(|r| r.class == Class::Symmetric).count();
            assert_eq!(n_sym, n.div_ceil(2));
        }
    }

    #[test]
    fn flip_identity_from_pairing() {
        let n = 9;
        let t = toeplitz(&iga(), n).unwrap();
        let p = split_eigendecompose(&t, true, Execution::Sequential).unwrap();
        let v = p.eigvecs.unwrap();
        let delta = Matrix::from_fn(n, n, |i, j| if i == j { Class::of_index(i + 1).sign() } else { 0.0 });
        let y = v.matmul(&delta).matmul(&v.transpose());
        assert!(y.sub(&exchange(n)).frobenius_norm() < 1e-12 * n as f64);
    }

    #[test]
    fn flipped_eigenvalues() {
        let one = toeplitz(&FourierCoeffs::real_even(&[1.0]), 3).unwrap();
        let e = eig_flipped(&flipped(&one).unwrap()).unwrap();
        for (x, y) in e.iter().zip([-1.0, 1.0, 1.0]) {
            assert!((x - y).abs() < 1e-15);
        }

        let t = toeplitz(&iga(), 16).unwrap();
        let p = split_eigendecompose(&t, false, Execution::Sequential).unwrap();
        let mut a = p.lam_h();
        a.sort_by(f64::total_cmp);
        let b = eig_flipped(&flipped(&t).unwrap()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_checks() {
        let bidiag = FourierCoeffs::real(&[0.0, 2.0, 1.0], Some(1)).unwrap();
        let t = toeplitz(&bidiag, 8).unwrap();
        let r = singular_cross_check(&t).unwrap();
        assert!(r.max_dev <= 1e-12 * r.norm());

        let t = toeplitz(&bidiag, 6).unwrap();
        let res = singvec_eigvec_check(&t).unwrap();
        assert!(res.left <= 1e-10 * res.norm.powi(2));
        assert!(res.right <= 1e-10 * res.norm.powi(2));

        let one = toeplitz(&FourierCoeffs::real_even(&[1.0]), 4).unwrap();
        let r = singular_cross_check(&one).unwrap();
        assert_eq!(r.max_dev, 0.0);
    }

    #[test]
    fn nonsymmetric_rejected() {
        let bidiag = FourierCoeffs::real(&[0.0, 2.0, 1.0], Some(1)).unwrap();
        let t = toeplitz(&bidiag, 4).unwrap();
        assert!(matches!(
            split_eigendecompose(&t, false, Execution::Sequential),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn pairing_csv() {
        let t = toeplitz(&FourierCoeffs::real_even(&[1.0]), 2).unwrap();
        let p = split_eigendecompose(&t, false, Execution::Sequential).unwrap();
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("i,lamT,lamH,class\n1,"));
        assert!(text.trim_end().ends_with("skew"));
    }
}
