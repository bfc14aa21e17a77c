//! Empirical checks of eigenvalue distributions: moments against symbol
//! integrals and sorted matching against the rearranged symbol `ψ`.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grids::sorted_sup_match;
use crate::numeric::{integrate_real, QuadOptions};
use crate::spectra::{Class, SpectralPairing};
use crate::symbol::SymbolSpec;

pub use crate::symbol::psi_concat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistClass {
    AllT,
    AllH,
    Plus,
    Minus,
}

impl DistClass {
    pub fn as_str(self) -> &'static str {
        match self {
            DistClass::AllT => "all-T",
            DistClass::AllH => "all-H",
            DistClass::Plus => "plus",
            DistClass::Minus => "minus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Moments,
    SortedMatch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistReport {
    pub n: usize,
    pub family: Family,
    pub class: DistClass,
    /// Test index: the moment order `p`, or 0 for a sorted match.
    pub tests: Vec<usize>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub gaps: Vec<f64>,
}

impl DistReport {
    fn new(n: usize, family: Family, class: DistClass, tests: Vec<usize>, lhs: Vec<f64>, rhs: Vec<f64>) -> Self {
        let gaps = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).collect();
        DistReport {
            n,
            family,
            class,
            tests,
            lhs,
            rhs,
            gaps,
        }
    }

    pub fn gap(&self, p: usize) -> Option<f64> {
        self.tests.iter().position(|&t| t == p).map(|i| self.gaps[i])
    }

    pub fn write_csv_header<W: Write>(mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,p,class,lhs,rhs,gap")
    }

    pub fn write_csv_rows<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for i in 0..self.tests.len() {
            writeln!(
                w,
                "{},{},{},{:.16e},{:.16e},{:.16e}",
                self.n,
                self.tests[i],
                self.class.as_str(),
                self.lhs[i],
                self.rhs[i],
                self.gaps[i]
            )?;
        }
        Ok(())
    }
}

/// Mean of `f^p` over the base domain of `spec`.
pub fn symbol_moment(spec: &SymbolSpec, p: usize) -> Result<f64> {
    let (a, b) = spec.base_domain().bounds();
    let mut total = 0.0;
    for (i, piece) in spec.pieces().iter().enumerate() {
        let f = |x: f64| spec.eval_piece(i, x).re.powi(p as i32);
        let (v, ok) = integrate_real(f, piece.interval.lo, piece.interval.hi, QuadOptions::default());
        if !ok {
            return Err(Error::Quadrature { k: p as i64, estimate: v });
        }
        total += v;
    }
    Ok(total / (b - a))
}

fn moments(values: &[f64], p_max: usize) -> Vec<f64> {
    let n = values.len() as f64;
    (1..=p_max)
        .map(|p| values.iter().map(|v| v.powi(p as i32)).sum::<f64>() / n)
        .collect()
}

/// `|(1/n) Σ λ_i^p − mean(f^p)|` for `p = 1..=p_max`.
pub fn moment_gap(eigs: &[f64], spec: &SymbolSpec, p_max: usize) -> Result<DistReport> {
    moment_gap_as(eigs, spec, p_max, DistClass::AllT, 1.0)
}

fn moment_gap_as(eigs: &[f64], spec: &SymbolSpec, p_max: usize, class: DistClass, sign: f64) -> Result<DistReport> {
    if eigs.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let rhs = (1..=p_max)
        .map(|p| symbol_moment(spec, p).map(|m| sign.powi(p as i32) * m))
        .collect::<Result<Vec<_>>>()?;
    Ok(DistReport::new(
        eigs.len(),
        Family::Moments,
        class,
        (1..=p_max).collect(),
        moments(eigs, p_max),
        rhs,
    ))
}

/// Moment gaps of the eigenvalues of `H` in the symmetric class against `f`
/// and in the skew class against `-f`.
pub fn class_moment_gap(pairing: &SpectralPairing, spec: &SymbolSpec, p_max: usize) -> Result<(DistReport, DistReport)> {
    let class = |c: Class| -> Vec<f64> { pairing.records.iter().filter(|r| r.class == c).map(|r| r.lam_h).collect() };
    let plus = moment_gap_as(&class(Class::Symmetric), spec, p_max, DistClass::Plus, 1.0)?;
    let minus = moment_gap_as(&class(Class::Skew), spec, p_max, DistClass::Minus, -1.0)?;
    Ok((plus, minus))
}

/// Samples `ψ(2πj/(n+1))`, `j = 1..n`, of the rearranged symbol.
pub fn psi_samples(spec: &SymbolSpec, n: usize) -> Vec<f64> {
    let psi = psi_concat(spec);
    (1..=n)
        .map(|j| psi.eval_re(2.0 * PI * j as f64 / (n + 1) as f64))
        .collect()
}

/// Sorted sup distance between the eigenvalues of `H_n(f)` and samples of `ψ`.
pub fn psi_gap(eigs_h: &[f64], spec: &SymbolSpec) -> Result<DistReport> {
    let samples = psi_samples(spec, eigs_h.len());
    let (gap, _) = sorted_sup_match(eigs_h, &samples)?;
    Ok(DistReport {
        n: eigs_h.len(),
        family: Family::SortedMatch,
        class: DistClass::AllH,
        tests: vec![0],
        lhs: vec![gap],
        rhs: vec![0.0],
        gaps: vec![gap],
    })
}
