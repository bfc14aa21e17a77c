//! Localization of singular values of `T_n(f)` and eigenvalues of `H_n(f)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{complex_singular_values, singular_values};
use crate::matgen::ToeplitzMatrix;
use crate::numeric::linspace;
use crate::symbol::{range_info, SymbolSpec};

/// Samples of a complex symbol used for its hull and `|f|` bounds.
pub const HULL_SAMPLES: usize = 8192;
/// Samples of `|f|` used to decide whether it is essentially constant.
pub const CONSTANCY_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymbolBounds {
    /// Distance of the origin from the convex hull of the essential range.
    pub d: f64,
    pub m_absf: f64,
    #[serde(rename = "M_absf")]
    pub big_m_absf: f64,
    /// `(m_f, M_f)` for real-valued symbols.
    pub real_range: Option<(f64, f64)>,
    pub abs_nonconstant: bool,
    /// Degree when the symbol is a trigonometric polynomial.
    pub r: Option<usize>,
}

impl SymbolBounds {
    pub fn tolerance(&self) -> f64 {
        1e-9 * self.big_m_absf.max(1.0)
    }
}

fn samples(spec: &SymbolSpec, count: usize) -> Vec<Complex64> {
    let (a, b) = spec.base_domain().bounds();
    linspace(a, b, count + 1).into_iter().map(|x| spec.eval(x)).collect()
}

pub fn symbol_bounds(spec: &SymbolSpec) -> Result<SymbolBounds> {
    let abs: Vec<f64> = samples(spec, CONSTANCY_SAMPLES).iter().map(|z| z.norm()).collect();
    let mean = abs.iter().sum::<f64>() / abs.len() as f64;
    let var = abs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (abs.len() - 1) as f64;
    let abs_nonconstant = var > 1e-18;
    let r = spec.trig_degree();

    match range_info(spec) {
        Ok(info) => Ok(SymbolBounds {
            d: real_hull_distance(info.inf_f, info.sup_f),
            m_absf: info.inf_absf,
            big_m_absf: info.sup_absf,
            real_range: Some((info.inf_f, info.sup_f)),
            abs_nonconstant,
            r,
        }),
        Err(Error::NonReal { .. }) => {
            let pts = samples(spec, HULL_SAMPLES);
            let (lo, hi) = pts
                .iter()
                .fold((f64::INFINITY, 0.0f64), |(lo, hi), z| (lo.min(z.norm()), hi.max(z.norm())));
            Ok(SymbolBounds {
                d: hull_distance_of(&pts),
                m_absf: lo,
                big_m_absf: hi,
                real_range: None,
                abs_nonconstant,
                r,
            })
        }
        Err(e) => Err(e),
    }
}

fn real_hull_distance(m: f64, big_m: f64) -> f64 {
    if m <= 0.0 && 0.0 <= big_m {
        0.0
    } else {
        m.abs().min(big_m.abs())
    }
}

/// Distance of the origin from the convex hull of the essential range.
pub fn hull_distance(spec: &SymbolSpec) -> Result<f64> {
    Ok(symbol_bounds(spec)?.d)
}

/// Same distance computed from the sampled curve, for any symbol.
pub fn hull_distance_sampled(spec: &SymbolSpec) -> f64 {
    hull_distance_of(&samples(spec, HULL_SAMPLES))
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Convex hull by Andrew's monotone chain, counter-clockwise, without
/// collinear points.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Complex64>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn segment_distance(a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return a.norm();
    }
    let t = (-(a.re * ab.re + a.im * ab.im) / len2).clamp(0.0, 1.0);
    (a + ab * t).norm()
}

fn hull_distance_of(points: &[Complex64]) -> f64 {
    let hull = convex_hull(points);
    match hull.len() {
        0 => f64::INFINITY,
        1 => hull[0].norm(),
        2 => segment_distance(hull[0], hull[1]),
        k => {
            let zero = Complex64::new(0.0, 0.0);
            if (0..k).all(|i| cross(hull[i], hull[(i + 1) % k], zero) >= 0.0) {
                return 0.0;
            }
            (0..k)
                .map(|i| segment_distance(hull[i], hull[(i + 1) % k]))
                .fold(f64::INFINITY, f64::min)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Inside,
    Outlier,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalizationReport {
    pub n: usize,
    pub d: f64,
    pub m_absf: f64,
    #[serde(rename = "M_absf")]
    pub big_m_absf: f64,
    pub r: Option<usize>,
    pub outlier_budget: Option<usize>,
    pub outliers: usize,
    pub violations: usize,
    #[serde(skip)]
    pub values: Vec<f64>,
    #[serde(skip)]
    pub verdicts: Vec<Verdict>,
}

impl LocalizationReport {
    fn new(values: Vec<f64>, verdicts: Vec<Verdict>, b: &SymbolBounds, budget: Option<usize>) -> Self {
        LocalizationReport {
            n: values.len(),
            d: b.d,
            m_absf: b.m_absf,
            big_m_absf: b.big_m_absf,
            r: b.r,
            outlier_budget: budget,
            outliers: verdicts.iter().filter(|v| **v == Verdict::Outlier).count(),
            violations: verdicts.iter().filter(|v| **v == Verdict::Violation).count(),
            values,
            verdicts,
        }
    }

    pub fn within_budget(&self) -> bool {
        self.outlier_budget.is_none_or(|b| self.outliers <= b)
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.within_budget()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain fields")
    }
}

/// Singular values of `T`, descending, for real or complex coefficients.
pub fn toeplitz_singular_values(t: &ToeplitzMatrix) -> Result<Vec<f64>> {
    if t.is_real() {
        singular_values(&t.dense())
    } else {
        complex_singular_values(&t.dense(), &t.dense_imag())
    }
}

/// Checks `σ ∈ [d, M_|f|]`, with `σ < M_|f|` when `|f|` is not constant.
pub fn check_singular_localization(sigma: &[f64], b: &SymbolBounds) -> LocalizationReport {
    let tol = b.tolerance();
    let verdicts = sigma
        .iter()
        .map(|&s| {
            let inside = s >= b.d - tol && s <= b.big_m_absf + tol;
            let strict = !b.abs_nonconstant || s < b.big_m_absf;
            if inside && strict {
                Verdict::Inside
            } else {
                Verdict::Violation
            }
        })
        .collect();
    LocalizationReport::new(sigma.to_vec(), verdicts, b, None)
}

/// Checks eigenvalues of `H` against `[-M,-d] ∪ [d,M]` and counts the
/// eigenvalues in `(-m_|f|, m_|f|)`, of which a degree-`r` trigonometric
/// polynomial allows at most `2r`.
pub fn check_flipped_localization(eigs: &[f64], b: &SymbolBounds) -> LocalizationReport {
    let tol = b.tolerance();
    let verdicts = eigs
        .iter()
        .map(|&l| {
            let a = l.abs();
            let inside = a >= b.d - tol && a <= b.big_m_absf + tol;
            let strict = !b.abs_nonconstant || a < b.big_m_absf;
            if !(inside && strict) {
                Verdict::Violation
            } else if a < b.m_absf - tol {
                Verdict::Outlier
            } else {
                Verdict::Inside
            }
        })
        .collect();
    LocalizationReport::new(eigs.to_vec(), verdicts, b, b.r.map(|r| 2 * r))
}
