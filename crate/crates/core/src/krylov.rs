//! MINRES for real symmetric systems and flip-then-solve for real Toeplitz
//! systems.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, norm2, Matrix};
use crate::matgen::{flipped, FlippedMatrix, ToeplitzMatrix};

pub trait SymmetricOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

impl SymmetricOperator for Matrix {
    fn dim(&self) -> usize {
        self.rows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.matvec_into(x, y);
    }
}

impl SymmetricOperator for FlippedMatrix {
    fn dim(&self) -> usize {
        self.order()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.dense().matvec_into(x, y);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    Converged,
    /// The Lanczos process reached an invariant subspace, or the projected
    /// system became singular, before the tolerance was met.
    Breakdown,
    MaxIterations,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveTrace {
    pub n: usize,
    pub iterations: usize,
    /// `‖r_k‖ / ‖r_0‖` for `k = 0..=iterations`.
    pub residuals: Vec<f64>,
    pub converged: bool,
    pub stop: StopReason,
    pub tol: f64,
    /// Predicted bound at each `k`, when spectral bounds are known.
    pub bound: Option<Vec<f64>>,
}

impl SolveTrace {
    pub fn final_residual(&self) -> f64 {
        *self.residuals.last().expect("residual at k = 0")
    }

    pub fn with_bound(mut self, d: f64, big_m: f64) -> Self {
        self.bound = Some((0..self.residuals.len()).map(|k| predict_bound(d, big_m, k).value).collect());
        self
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "k,relres,bound")?;
        for (k, r) in self.residuals.iter().enumerate() {
            match &self.bound {
                Some(b) => writeln!(w, "{k},{r:.16e},{:.16e}", b[k])?,
                None => writeln!(w, "{k},{r:.16e},")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinresOptions {
    pub tol: f64,
    pub max_it: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub x: Vec<f64>,
    pub trace: SolveTrace,
}

const PROBES: usize = 3;

/// Checks `|xᵀAy − yᵀAx| ≤ 1e-12 ‖A‖ ‖x‖ ‖y‖` on seeded random probes.
pub fn probe_symmetry<A: SymmetricOperator + ?Sized>(a: &A) -> Result<()> {
    let n = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut ax = vec![0.0; n];
    let mut ay = vec![0.0; n];
    for _ in 0..PROBES {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        a.apply(&x, &mut ax);
        a.apply(&y, &mut ay);
        let (nx, ny) = (norm2(&x), norm2(&y));
        let norm = (norm2(&ax) / nx).max(norm2(&ay) / ny);
        let defect = (dot(&x, &ay) - dot(&y, &ax)).abs();
        if defect > 1e-12 * norm * nx * ny {
            return Err(Error::NotSymmetric(defect));
        }
    }
    Ok(())
}

/// Minimal residual method for `A x = b` with symmetric `A`, starting from
/// zero.
pub fn minres<A: SymmetricOperator + ?Sized>(a: &A, b: &[f64], opts: MinresOptions) -> Result<Solution> {
    let n = a.dim();
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.len() });
    }
    let beta1 = norm2(b);
    if beta1 == 0.0 {
        return Err(Error::InvalidArgument("right-hand side is zero".into()));
    }
    probe_symmetry(a)?;

    let mut x = vec![0.0; n];
    let mut v: Vec<f64> = b.iter().map(|bi| bi / beta1).collect();
    let mut v_old = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut w1 = vec![0.0; n];
    let mut w2 = vec![0.0; n];

    let (mut beta, mut cs, mut sn) = (0.0f64, -1.0f64, 0.0f64);
    let (mut dbar, mut epsln, mut phibar) = (0.0f64, 0.0f64, beta1);
    let mut residuals = vec![1.0];
    let mut stop = StopReason::MaxIterations;

    for _ in 0..opts.max_it {
        a.apply(&v, &mut p);
        for i in 0..n {
            p[i] -= beta * v_old[i];
        }
        let alpha = dot(&v, &p);
        for i in 0..n {
            p[i] -= alpha * v[i];
        }
        let beta_next = norm2(&p);

        let oldeps = epsln;
        let delta = cs * dbar + sn * alpha;
        let gbar = sn * dbar - cs * alpha;
        epsln = sn * beta_next;
        dbar = -cs * beta_next;
        let gamma = gbar.hypot(beta_next);
        if gamma <= f64::EPSILON * (alpha.abs() + beta + beta_next).max(f64::MIN_POSITIVE) {
            stop = StopReason::Breakdown;
            break;
        }
        cs = gbar / gamma;
        sn = beta_next / gamma;
        let phi = cs * phibar;
        phibar *= sn;

        std::mem::swap(&mut w1, &mut w2);
        std::mem::swap(&mut w2, &mut w);
        for i in 0..n {
            w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
            x[i] += phi * w[i];
        }
        let relres = phibar.abs() / beta1;
        residuals.push(relres);
        if relres <= opts.tol {
            stop = StopReason::Converged;
            break;
        }
        if beta_next <= f64::EPSILON * (alpha.abs() + beta) {
            stop = StopReason::Breakdown;
            break;
        }

        std::mem::swap(&mut v_old, &mut v);
        for i in 0..n {
            v[i] = p[i] / beta_next;
        }
        beta = beta_next;
    }

    let trace = SolveTrace {
        n,
        iterations: residuals.len() - 1,
        converged: stop == StopReason::Converged,
        residuals,
        stop,
        tol: opts.tol,
        bound: None,
    };
    Ok(Solution { x, trace })
}

/// Solves `T x = b` for real `T` by MINRES on the symmetric system
/// `(Y T) x = Y b`, then checks the residual of the original system.
pub fn flip_solve(t: &ToeplitzMatrix, b: &[f64], tol: f64) -> Result<Solution> {
    let h = flipped(t)?;
    let asym = h.dense().asymmetry();
    if asym != 0.0 {
        return Err(Error::Violation(format!("flipped matrix not symmetric ({asym:e})")));
    }
    let n = t.order();
    let yb: Vec<f64> = b.iter().rev().copied().collect();
    let sol = minres(&h, &yb, MinresOptions { tol, max_it: 2 * n + 5 })?;
    let tx = t.matvec(&sol.x);
    let res = tx.iter().zip(b).map(|(a, c)| (a - c).powi(2)).sum::<f64>().sqrt() / norm2(b);
    if !sol.trace.converged || res > 10.0 * tol {
        return Err(Error::Stagnation(res));
    }
    Ok(sol)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bound {
    pub value: f64,
    /// Set when `d = 0`, where the estimate carries no information.
    pub vacuous: bool,
}

/// `2((M − d)/(M + d))^⌊k/2⌋`, the MINRES bound for spectra in
/// `[−M, −d] ∪ [d, M]`.
pub fn predict_bound(d: f64, big_m: f64, k: usize) -> Bound {
    if d <= 0.0 {
        return Bound { value: 2.0, vacuous: true };
    }
    let rho = ((big_m - d) / (big_m + d)).max(0.0);
    Bound {
        value: 2.0 * rho.powi((k / 2) as i32),
        vacuous: false,
    }
}
