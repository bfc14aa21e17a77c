//! Reproduction of the worked examples: sweeps of `M_n` and `m(G_n)` over
//! `n`, and symbol samples for plotting.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::Result;
use crate::exec::Execution;
use crate::grids::{exact_grid, match_mn, uniform_grid};
use crate::matgen::{toeplitz, ToeplitzMatrix};
use crate::numeric::{linspace, QuadOptions};
use crate::presets::Preset;
use crate::spectra::{split_eigendecompose, SpectralPairing};
use crate::symbol::{fourier_coeffs_with, SymbolSpec};

pub const TABLE_SIZES: [usize; 8] = [8, 16, 32, 64, 128, 256, 512, 1024];

/// Reference `M_n` for preset e2 on the grid `iπ/(n+1)`.
pub const TABLE1_REFERENCE: [f64; 8] = [0.0851, 0.0632, 0.0454, 0.0312, 0.0206, 0.0132, 0.0082, 0.0050];
/// Reference `m(G_n)` of the exact grid for preset e2.5.
pub const TABLE2_REFERENCE: [f64; 8] = [0.2475, 0.1304, 0.0753, 0.0403, 0.0328, 0.0245, 0.0119, 0.0060];
/// Reference `m(G_n)` of the exact grid for preset e3.
pub const TABLE3_REFERENCE: [f64; 8] = [0.5771, 0.4633, 0.2421, 0.2082, 0.1127, 0.0812, 0.0336, 0.0183];

pub const FIGURE_POINTS: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Table1,
    Table2,
    Table3,
    Fig1,
    Fig2,
    Fig3,
}

impl Target {
    pub const ALL: [Target; 6] = [Target::Table1, Target::Table2, Target::Table3, Target::Fig1, Target::Fig2, Target::Fig3];

    pub fn name(self) -> &'static str {
        match self {
            Target::Table1 => "table1",
            Target::Table2 => "table2",
            Target::Table3 => "table3",
            Target::Fig1 => "fig1",
            Target::Fig2 => "fig2",
            Target::Fig3 => "fig3",
        }
    }

    pub fn preset(self) -> Preset {
        match self {
            Target::Table1 | Target::Fig1 => Preset::E2,
            Target::Table2 | Target::Fig2 => Preset::E25,
            Target::Table3 | Target::Fig3 => Preset::E3,
        }
    }

    pub fn reference_values(self) -> Option<&'static [f64; 8]> {
        match self {
            Target::Table1 => Some(&TABLE1_REFERENCE),
            Target::Table2 => Some(&TABLE2_REFERENCE),
            Target::Table3 => Some(&TABLE3_REFERENCE),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub value: f64,
}

/// `T_n(f)` with coefficients computed up to `|k| = n - 1`.
pub fn toeplitz_of(spec: &SymbolSpec, n: usize, exec: Execution) -> Result<ToeplitzMatrix> {
    let coeffs = fourier_coeffs_with(spec, n.saturating_sub(1), exec, QuadOptions::default())?;
    toeplitz(&coeffs, n)
}

pub fn pairing_of(spec: &SymbolSpec, n: usize, exec: Execution) -> Result<SpectralPairing> {
    split_eigendecompose(&toeplitz_of(spec, n, exec)?, false, exec)
}

/// `M_n` against the uniform grid, for each `n`.
pub fn sweep_mn(spec: &SymbolSpec, sizes: &[usize], exec: Execution) -> Result<Vec<TableRow>> {
    exec.map(sizes, |&n| {
        let p = pairing_of(spec, n, exec)?;
        let r = match_mn(&p, spec, &uniform_grid(n))?;
        Ok(TableRow { n, value: r.m_n })
    })
    .into_iter()
    .collect()
}

/// `m(G_n)` of the recovered exact grid, for each `n`.
pub fn sweep_exact(spec: &SymbolSpec, sizes: &[usize], exec: Execution) -> Result<Vec<TableRow>> {
    exec.map(sizes, |&n| {
        let p = pairing_of(spec, n, exec)?;
        let (g, _) = exact_grid(&p, spec)?;
        Ok(TableRow { n, value: g.m })
    })
    .into_iter()
    .collect()
}

/// Table rows for a table target, or `None` for figures.
pub fn table(target: Target, exec: Execution) -> Option<Result<Vec<TableRow>>> {
    let spec = target.preset().symbol();
    match target {
        Target::Table1 => Some(sweep_mn(&spec, &TABLE_SIZES, exec)),
        Target::Table2 | Target::Table3 => Some(sweep_exact(&spec, &TABLE_SIZES, exec)),
        _ => None,
    }
}

/// `(θ, f(θ))` on `[0, π]`.
pub fn figure(spec: &SymbolSpec, points: usize) -> Vec<(f64, f64)> {
    linspace(0.0, PI, points).into_iter().map(|x| (x, spec.eval_re(x))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps() {
        let rows = sweep_mn(&Preset::E2.symbol(), &[8, 16], Execution::Sequential).unwrap();
        assert!((rows[0].value - TABLE1_REFERENCE[0]).abs() < 5e-5);
        assert!((rows[1].value - TABLE1_REFERENCE[1]).abs() < 5e-5);
        let rows = sweep_exact(&Preset::E25.symbol(), &[8], Execution::Parallel).unwrap();
        assert!((rows[0].value - TABLE2_REFERENCE[0]).abs() < 5e-5);
    }

    #[test]
    fn figure_samples() {
        let pts = figure(&Preset::E25.symbol(), FIGURE_POINTS);
        assert_eq!(pts.len(), FIGURE_POINTS);
        assert!(pts[0].1.abs() < 1e-15);
        assert_eq!(pts[FIGURE_POINTS - 1].0, PI);
    }
}
