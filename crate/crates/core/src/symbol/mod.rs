//! Symbols: parsing, evaluation, Fourier coefficients and range analysis.

mod expr;
mod fourier;
mod parse;
mod range;

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

pub use expr::{Expr, TrigPoly};
pub use fourier::{check_real_even, fourier_coeffs, fourier_coeffs_with, FourierCoeffs, RealEvenCheck, TOL_COEFF};
pub use range::{range_info, Direction, MonotonePiece, RangeInfo, MONOTONE_SAMPLES};

use crate::error::{Error, Result};

const ENDPOINT_TOL: f64 = 1e-12;

/// Sub-interval of the base domain. The lower end is closed unless stated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub expr: Expr,
    pub interval: Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseDomain {
    /// [0, π]
    Half,
    /// [-π, π]
    Full,
    /// [0, 2π]
    Double,
}

impl BaseDomain {
    pub fn bounds(self) -> (f64, f64) {
        match self {
            BaseDomain::Half => (0.0, PI),
            BaseDomain::Full => (-PI, PI),
            BaseDomain::Double => (0.0, 2.0 * PI),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    Even,
    None,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Requested extension; `None` picks the default for the base domain.
    pub extension: Option<Extension>,
}

/// A piecewise closed-form symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSpec {
    source: String,
    pieces: Vec<Piece>,
    base: BaseDomain,
    extension: Extension,
    trig_poly: Option<TrigPoly>,
}

pub fn parse_symbol(text: &str) -> Result<SymbolSpec> {
    parse_symbol_with(text, ParseOptions::default())
}

pub fn parse_symbol_with(text: &str, opts: ParseOptions) -> Result<SymbolSpec> {
    let raw = parse::parse_pieces(text)?;
    let with_interval = raw.iter().filter(|p| p.interval.is_some()).count();

    let (pieces, base) = if with_interval == 0 {
        if raw.len() > 1 {
            return Err(Error::Partition(
                "several pieces need explicit intervals".into(),
            ));
        }
        let expr = raw.into_iter().next().expect("parser yields a piece").expr;
        let base = match opts.extension {
            Some(Extension::Even) => BaseDomain::Half,
            _ => BaseDomain::Full,
        };
        let (lo, hi) = base.bounds();
        (vec![Piece { expr, interval: Interval::closed(lo, hi) }], base)
    } else if with_interval != raw.len() {
        return Err(Error::Partition("either all pieces carry an interval or none".into()));
    } else {
        let pieces: Vec<Piece> = raw
            .into_iter()
            .map(|p| Piece {
                expr: p.expr,
                interval: p.interval.expect("checked above"),
            })
            .collect();
        let base = check_partition(&pieces)?;
        (pieces, base)
    };

    let extension = match (base, opts.extension) {
        (BaseDomain::Half, None | Some(Extension::Even)) => Extension::Even,
        (BaseDomain::Half, Some(Extension::None)) => {
            return Err(Error::Partition(
                "a symbol given on [0, pi] needs the even extension".into(),
            ))
        }
        (_, Some(Extension::Even)) => {
            return Err(Error::Partition(
                "the even extension needs pieces on [0, pi]".into(),
            ))
        }
        (_, _) => Extension::None,
    };

    SymbolSpec::from_pieces(text.trim().to_string(), pieces, base, extension)
}

fn check_partition(pieces: &[Piece]) -> Result<BaseDomain> {
    let near = |a: f64, b: f64| (a - b).abs() <= ENDPOINT_TOL;
    let first = pieces[0].interval;
    let base = if near(first.lo, 0.0) {
        BaseDomain::Half
    } else if near(first.lo, -PI) {
        BaseDomain::Full
    } else {
        return Err(Error::Partition(format!(
            "first piece starts at {} instead of 0 or -pi",
            first.lo
        )));
    };
    for w in pieces.windows(2) {
        let (a, b) = (w[0].interval, w[1].interval);
        if b.lo < a.hi - ENDPOINT_TOL || (near(a.hi, b.lo) && a.hi_closed && b.lo_closed) {
            return Err(Error::Partition(format!("pieces {a} and {b} overlap")));
        }
        if b.lo > a.hi + ENDPOINT_TOL || (near(a.hi, b.lo) && !a.hi_closed && !b.lo_closed) {
            return Err(Error::Partition(format!("gap between pieces {a} and {b}")));
        }
    }
    let last = pieces[pieces.len() - 1].interval;
    if !near(last.hi, PI) || !last.hi_closed {
        return Err(Error::Partition(format!(
            "last piece {last} must end with a closed bracket at pi"
        )));
    }
    Ok(base)
}

impl SymbolSpec {
    fn from_pieces(source: String, pieces: Vec<Piece>, base: BaseDomain, extension: Extension) -> Result<Self> {
        let mut spec = SymbolSpec {
            source,
            pieces,
            base,
            extension,
            trig_poly: None,
        };
        spec.trig_poly = spec.detect_trig_poly();
        spec.check_bounded()?;
        Ok(spec)
    }

    fn detect_trig_poly(&self) -> Option<TrigPoly> {
        if self.base == BaseDomain::Double {
            return None;
        }
        let first = self.pieces[0].expr.trig_poly()?;
        for p in &self.pieces[1..] {
            if p.expr.trig_poly()? != first {
                return None;
            }
        }
        match self.extension {
            Extension::Even if !first.is_even() => None,
            _ => Some(first),
        }
    }

    fn check_bounded(&self) -> Result<()> {
        let (lo, hi) = self.base.bounds();
        for x in crate::numeric::linspace(lo, hi, 257) {
            let v = self.eval(x);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::Unbounded(format!("symbol is not finite at x = {x}")));
            }
        }
        Ok(())
    }

    /// A real constant symbol, stored as a degree-0 trigonometric polynomial.
    pub fn constant(c: f64) -> Self {
        SymbolSpec::from_pieces(
            format!("{c}"),
            vec![Piece {
                expr: Expr::Const(c),
                interval: Interval::closed(-PI, PI),
            }],
            BaseDomain::Full,
            Extension::None,
        )
        .expect("constants are bounded")
    }

    /// Symbol given directly by its trigonometric polynomial coefficients.
    pub fn from_trig_poly(poly: &TrigPoly) -> Self {
        let expr = poly
            .terms()
            .map(|(k, c)| Expr::Mul(Box::new(Expr::Complex(c)), Box::new(Expr::ExpI(k as f64))))
            .reduce(|a, b| Expr::Add(Box::new(a), Box::new(b)))
            .unwrap_or(Expr::Const(0.0));
        let mut spec = SymbolSpec {
            source: describe_poly(poly),
            pieces: vec![Piece {
                expr,
                interval: Interval::closed(-PI, PI),
            }],
            base: BaseDomain::Full,
            extension: Extension::None,
            trig_poly: None,
        };
        spec.trig_poly = Some(poly.clone());
        spec
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn base_domain(&self) -> BaseDomain {
        self.base
    }

    pub fn extension(&self) -> Extension {
        self.extension
    }

    pub fn trig_poly(&self) -> Option<&TrigPoly> {
        self.trig_poly.as_ref()
    }

    pub fn trig_degree(&self) -> Option<usize> {
        self.trig_poly.as_ref().map(TrigPoly::degree)
    }

    /// Maps an arbitrary angle onto the point of the base domain where the
    /// defining piece is looked up.
    fn reduce(&self, x: f64) -> f64 {
        match self.base {
            BaseDomain::Double => {
                if (0.0..=2.0 * PI).contains(&x) {
                    x
                } else {
                    x.rem_euclid(2.0 * PI)
                }
            }
            _ => {
                let wrapped = if (-PI..=PI).contains(&x) {
                    x
                } else {
                    x - 2.0 * PI * (x / (2.0 * PI)).round()
                };
                match self.extension {
                    Extension::Even => wrapped.abs(),
                    Extension::None => wrapped,
                }
            }
        }
    }

    /// Index of the piece defining the symbol at `x` (after reduction).
    pub fn piece_index(&self, x: f64) -> usize {
        let y = self.reduce(x);
        if let Some(i) = self.pieces.iter().position(|p| p.interval.contains(y)) {
            return i;
        }
        // Outside every piece only through rounding at the domain ends.
        if y < self.pieces[0].interval.lo {
            0
        } else {
            self.pieces.len() - 1
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let y = self.reduce(x);
        self.pieces[self.piece_index(x)].expr.eval(y)
    }

    /// Real part of [`SymbolSpec::eval`].
    pub fn eval_re(&self, x: f64) -> f64 {
        self.eval(x).re
    }

    /// Evaluates the expression of piece `i` at `x` without domain lookup;
    /// gives one-sided limits at piece boundaries.
    pub fn eval_piece(&self, i: usize, x: f64) -> Complex64 {
        self.pieces[i].expr.eval(x)
    }

    /// Largest |f(-x) - conj(f(x))| over `points`; vanishes for symbols with
    /// real Fourier coefficients.
    pub fn conjugate_symmetry_defect(&self, points: &[f64]) -> f64 {
        points
            .iter()
            .map(|&x| (self.eval(-x) - self.eval(x).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Restriction to `[0, π]` as a list of pieces.
    pub fn half_pieces(&self) -> Vec<Piece> {
        self.pieces
            .iter()
            .filter_map(|p| {
                let iv = p.interval;
                if iv.hi <= 0.0 {
                    return None;
                }
                let lo_closed = if iv.lo < 0.0 { true } else { iv.lo_closed };
                Some(Piece {
                    expr: p.expr.clone(),
                    interval: Interval {
                        lo: iv.lo.max(0.0),
                        hi: iv.hi.min(PI),
                        lo_closed,
                        hi_closed: if iv.hi > PI { true } else { iv.hi_closed },
                    },
                })
            })
            .collect()
    }
}

fn describe_poly(poly: &TrigPoly) -> String {
    let terms: Vec<String> = poly
        .terms()
        .map(|(k, c)| format!("({}{:+}i)*exp(i*{k}*t)", c.re, c.im))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// The rearranged symbol on `[0, 2π]` equal to `g` on `[0, π]` and to
/// `-g(x - π)` on `(π, 2π]`, where `g` is the restriction of `spec` to `[0, π]`.
pub fn psi_concat(spec: &SymbolSpec) -> SymbolSpec {
    let half = spec.half_pieces();
    let mut pieces = half.clone();
    for (i, p) in half.into_iter().enumerate() {
        let iv = p.interval;
        pieces.push(Piece {
            expr: Expr::Neg(Box::new(Expr::Shift(Box::new(p.expr), PI))),
            interval: Interval {
                lo: iv.lo + PI,
                hi: iv.hi + PI,
                lo_closed: if i == 0 { false } else { iv.lo_closed },
                hi_closed: iv.hi_closed,
            },
        });
    }
    SymbolSpec {
        source: format!("psi[{}]", spec.source),
        pieces,
        base: BaseDomain::Double,
        extension: Extension::None,
        trig_poly: None,
    }
}
