use std::f64::consts::PI;

use serde::Serialize;

use super::{BaseDomain, Extension, Piece, SymbolSpec};
use crate::error::{Error, Result};
use crate::numeric::{bisect, golden_max, linspace};

/// Uniform samples on `[0, π]` used for monotone-piece detection.
pub const MONOTONE_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
    Constant,
}

/// Maximal sub-interval of one declared piece on which the symbol is monotone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotonePiece {
    pub lo: f64,
    pub hi: f64,
    pub direction: Direction,
    /// One-sided limits of the defining expression at `lo` and `hi`.
    pub value_lo: f64,
    pub value_hi: f64,
    /// Index of the declared piece this interval belongs to.
    pub piece: usize,
}

impl MonotonePiece {
    pub fn value_range(&self) -> (f64, f64) {
        (self.value_lo.min(self.value_hi), self.value_lo.max(self.value_hi))
    }

    /// Distance from `v` to the value range (zero inside).
    pub fn miss(&self, v: f64) -> f64 {
        let (a, b) = self.value_range();
        (a - v).max(v - b).max(0.0)
    }

    pub fn contains_x(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Preimage of `v` on this piece by bisection; values slightly outside
    /// the range clamp to the nearer end. Constant pieces return `None`.
    pub fn solve(&self, spec: &SymbolSpec, v: f64) -> Option<f64> {
        if self.direction == Direction::Constant {
            return None;
        }
        let (a, b) = self.value_range();
        if v <= a {
            return Some(if self.value_lo <= self.value_hi { self.lo } else { self.hi });
        }
        if v >= b {
            return Some(if self.value_lo >= self.value_hi { self.lo } else { self.hi });
        }
        let g = |x: f64| spec.eval_piece(self.piece, x).re - v;
        Some(bisect(g, self.lo, self.hi))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeInfo {
    pub inf_f: f64,
    pub sup_f: f64,
    pub inf_absf: f64,
    pub sup_absf: f64,
    /// Monotone decomposition of `[0, π]`.
    pub monotone_pieces: Vec<MonotonePiece>,
    /// Samples per unit length used by the detection pass.
    pub sample_density: f64,
    /// Sampled necessary condition for the essential range being the whole
    /// interval `[inf_f, sup_f]`: the value ranges of the monotone pieces
    /// leave no gap.
    pub range_is_interval: bool,
}

pub fn range_info(spec: &SymbolSpec) -> Result<RangeInfo> {
    let (lo, hi) = spec.base_domain().bounds();
    for x in linspace(lo, hi, MONOTONE_SAMPLES + 1) {
        let v = spec.eval(x);
        if v.im.abs() > 1e-12 * (1.0 + v.re.abs()) {
            return Err(Error::NonReal { x, imag: v.im });
        }
    }

    let half = spec.half_pieces();
    let monotone = decompose(spec, &half, 0.0, PI, 0);
    let mut all = monotone.clone();
    if spec.base_domain() == BaseDomain::Full && spec.extension() == Extension::None {
        let neg: Vec<(usize, Piece)> = spec
            .pieces()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.interval.lo < 0.0)
            .map(|(i, p)| {
                let mut q = p.clone();
                q.interval.hi = q.interval.hi.min(0.0);
                (i, q)
            })
            .collect();
        for (i, p) in neg {
            all.extend(decompose_piece(spec, &p, i, -PI, 0.0));
        }
    }

    let inf_f = all.iter().map(|m| m.value_range().0).fold(f64::INFINITY, f64::min);
    let sup_f = all.iter().map(|m| m.value_range().1).fold(f64::NEG_INFINITY, f64::max);
    let (inf_absf, sup_absf) = abs_bounds(inf_f, sup_f);

    let mut ranges: Vec<(f64, f64)> = all.iter().map(MonotonePiece::value_range).collect();
    ranges.sort_by(|a, b| a.0.total_cmp(&b.0));
    let gap_tol = 1e-9 * (1.0 + sup_f.abs().max(inf_f.abs()));
    let mut reach = inf_f;
    let mut range_is_interval = true;
    for (a, b) in ranges {
        if a > reach + gap_tol {
            range_is_interval = false;
        }
        reach = reach.max(b);
    }

    Ok(RangeInfo {
        inf_f,
        sup_f,
        inf_absf,
        sup_absf,
        monotone_pieces: monotone,
        sample_density: MONOTONE_SAMPLES as f64 / PI,
        range_is_interval,
    })
}

/// Bounds of |f| from the bounds of a real f.
pub(crate) fn abs_bounds(inf_f: f64, sup_f: f64) -> (f64, f64) {
    let lo = if inf_f <= 0.0 && sup_f >= 0.0 {
        0.0
    } else {
        inf_f.abs().min(sup_f.abs())
    };
    (lo, inf_f.abs().max(sup_f.abs()))
}

fn decompose(spec: &SymbolSpec, pieces: &[Piece], a: f64, b: f64, _offset: usize) -> Vec<MonotonePiece> {
    let mut out = Vec::new();
    for p in pieces {
        let index = spec
            .pieces()
            .iter()
            .position(|q| q.expr == p.expr && q.interval.hi >= p.interval.hi && q.interval.lo <= p.interval.lo)
            .unwrap_or(0);
        out.extend(decompose_piece(spec, p, index, a, b));
    }
    out
}

fn decompose_piece(spec: &SymbolSpec, p: &Piece, index: usize, a: f64, b: f64) -> Vec<MonotonePiece> {
    let lo = p.interval.lo.max(a);
    let hi = p.interval.hi.min(b);
    if hi <= lo {
        return vec![];
    }
    let g = |x: f64| spec.eval_piece(index, x).re;

    let h = (b - a) / MONOTONE_SAMPLES as f64;
    let mut xs = vec![lo];
    let first = ((lo - a) / h).floor() as usize + 1;
    let mut j = first;
    while a + j as f64 * h < hi {
        let x = a + j as f64 * h;
        if x > lo {
            xs.push(x);
        }
        j += 1;
    }
    xs.push(hi);
    if xs.len() < 9 {
        xs = linspace(lo, hi, 9);
    }
    let ys: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let scale = 1.0 + ys.iter().fold(0.0f64, |m, y| m.max(y.abs()));
    let tol = 1e-13 * scale;
    let signs: Vec<i8> = ys
        .windows(2)
        .map(|w| {
            let d = w[1] - w[0];
            if d > tol {
                1
            } else if d < -tol {
                -1
            } else {
                0
            }
        })
        .collect();

    let piece = |lo: f64, hi: f64, direction: Direction| MonotonePiece {
        lo,
        hi,
        direction,
        value_lo: g(lo),
        value_hi: g(hi),
        piece: index,
    };

    if signs.iter().all(|&s| s == 0) {
        return vec![piece(lo, hi, Direction::Constant)];
    }

    // Zero differences inherit the previous nonzero sign (leading ones the
    // next), so flat spots inside an analytic piece never split it.
    let mut filled = signs.clone();
    let first_nonzero = filled.iter().position(|&s| s != 0).expect("not all zero");
    let lead = filled[first_nonzero];
    for s in filled.iter_mut().take(first_nonzero) {
        *s = lead;
    }
    for i in 1..filled.len() {
        if filled[i] == 0 {
            filled[i] = filled[i - 1];
        }
    }

    let mut out = Vec::new();
    let mut start = lo;
    for i in 1..filled.len() {
        if filled[i] != filled[i - 1] {
            // extremum between xs[i-1] and xs[i+1]
            let (l, r) = (xs[i - 1], xs[i + 1]);
            let x_ext = if filled[i - 1] > 0 {
                golden_max(g, l, r)
            } else {
                golden_max(|x| -g(x), l, r)
            };
            let dir = if filled[i - 1] > 0 { Direction::Increasing } else { Direction::Decreasing };
            out.push(piece(start, x_ext, dir));
            start = x_ext;
        }
    }
    let dir = if filled[filled.len() - 1] > 0 { Direction::Increasing } else { Direction::Decreasing };
    out.push(piece(start, hi, dir));
    out
}
