//! Grids on `[0, π]`, the uniformity measure, and matching of eigenvalues to
//! symbol samples.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectra::{Class, SpectralPairing};
use crate::symbol::{range_info, Direction, MonotonePiece, SymbolSpec};

/// Tolerance on `|f(x) - λ|` for accepting a preimage.
pub const TOL_PREIMAGE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    pub points: Vec<f64>,
    pub a: f64,
    pub b: f64,
    /// Uniformity measure of `points`.
    pub m: f64,
}

impl Grid {
    pub fn new(points: Vec<f64>, a: f64, b: f64) -> Result<Self> {
        let m = uniformity_measure(&points, a, b)?;
        Ok(Grid { points, a, b, m })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `x_i = iπ/(n+1)`, `i = 1..n`.
pub fn uniform_grid(n: usize) -> Grid {
    let points = (1..=n).map(|i| reference_point(i, n, 0.0, PI)).collect();
    Grid { points, a: 0.0, b: PI, m: 0.0 }
}

fn reference_point(i: usize, d: usize, a: f64, b: f64) -> f64 {
    a + i as f64 * (b - a) / (d + 1) as f64
}

/// `max_i |x_i - (a + i(b-a)/(d+1))|` with 1-based `i`. The points are taken
/// in the order given.
pub fn uniformity_measure(points: &[f64], a: f64, b: f64) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let d = points.len();
    Ok(points
        .iter()
        .enumerate()
        .fold(0.0f64, |m, (i, x)| m.max((x - reference_point(i + 1, d, a, b)).abs())))
}

/// Sorts both multisets and returns `max_i |A_(i) - B_(i)|` together with the
/// permutation `p` such that `a[p[r]]` pairs with the `r`-th smallest of `b`.
pub fn sorted_sup_match(a: &[f64], b: &[f64]) -> Result<(f64, Vec<usize>)> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let pa = argsort(a);
    let pb = argsort(b);
    let dev = pa
        .iter()
        .zip(&pb)
        .fold(0.0f64, |m, (&i, &j)| m.max((a[i] - b[j]).abs()));
    let mut perm = vec![0; a.len()];
    for (r, &j) in pb.iter().enumerate() {
        perm[j] = pa[r];
    }
    Ok((dev, perm))
}

fn argsort(v: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
    idx
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchRow {
    /// 1-based grid slot.
    pub i: usize,
    pub x: f64,
    pub fx: f64,
    pub lam_t: f64,
    /// 1-based pairing index whose eigenvalue sits in this slot; same parity
    /// as `i`.
    pub source: usize,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchReport {
    pub n: usize,
    pub grid: Grid,
    pub rows: Vec<MatchRow>,
    pub m_n: f64,
}

#[derive(Serialize)]
struct Summary {
    n: usize,
    m_n: f64,
    uniformity: f64,
}

impl MatchReport {
    fn from_rows(n: usize, grid: Grid, rows: Vec<MatchRow>) -> Self {
        let m_n = rows.iter().fold(0.0f64, |m, r| m.max(r.deviation));
        MatchReport { n, grid, rows, m_n }
    }

    pub fn deviations(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.deviation).collect()
    }

    /// Pairing index used at each slot.
    pub fn permutation(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.source).collect()
    }

    pub fn parity_preserved(&self) -> bool {
        self.rows.iter().all(|r| r.i % 2 == r.source % 2)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "i,x,fx,lamT,deviation")?;
        for r in &self.rows {
            writeln!(w, "{},{:.16e},{:.16e},{:.16e},{:.16e}", r.i, r.x, r.fx, r.lam_t, r.deviation)?;
        }
        Ok(())
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string(&Summary {
            n: self.n,
            m_n: self.m_n,
            uniformity: self.grid.m,
        })
        .expect("plain numbers")
    }
}

/// Slots (0-based) and pairing indices (1-based) of one parity class.
fn class_members(pairing: &SpectralPairing, class: Class) -> (Vec<usize>, Vec<usize>, Vec<f64>) {
    let recs: Vec<_> = pairing.records.iter().filter(|r| r.class == class).collect();
    let slots = recs.iter().map(|r| r.i - 1).collect();
    let sources = recs.iter().map(|r| r.i).collect();
    let values = recs.iter().map(|r| r.lam_t).collect();
    (slots, sources, values)
}

/// Matches each class of eigenvalues to the samples of `f` on the same-parity
/// subgrid by sorting, and reports the largest deviation.
pub fn match_mn(pairing: &SpectralPairing, spec: &SymbolSpec, grid: &Grid) -> Result<MatchReport> {
    let n = pairing.n;
    if grid.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: grid.len(),
        });
    }
    let fx: Vec<f64> = grid.points.iter().map(|&x| spec.eval_re(x)).collect();
    let mut rows = Vec::with_capacity(n);
    for class in [Class::Symmetric, Class::Skew] {
        let (slots, sources, values) = class_members(pairing, class);
        let samples: Vec<f64> = slots.iter().map(|&s| fx[s]).collect();
        let (_, perm) = sorted_sup_match(&values, &samples)?;
        for (k, &s) in slots.iter().enumerate() {
            let lam = values[perm[k]];
            rows.push(MatchRow {
                i: s + 1,
                x: grid.points[s],
                fx: fx[s],
                lam_t: lam,
                source: sources[perm[k]],
                deviation: (fx[s] - lam).abs(),
            });
        }
    }
    rows.sort_by_key(|r| r.i);
    Ok(MatchReport::from_rows(n, grid.clone(), rows))
}

/// Recovers a grid with `f(x_i) = λ_i(T_n(f))`.
///
/// Within each parity class the `r`-th smallest eigenvalue is routed to the
/// reference point `iπ/(n+1)` of the class whose sample of `f` has rank `r`.
/// Its preimage is taken on the monotone piece containing that reference
/// point when the piece attains the value, otherwise the preimage nearest to
/// the reference point. The class's preimages are then placed in its slots
/// in increasing order.
pub fn exact_grid(pairing: &SpectralPairing, spec: &SymbolSpec) -> Result<(Grid, MatchReport)> {
    let n = pairing.n;
    let info = range_info(spec)?;
    let pieces = &info.monotone_pieces;
    let scale = 1.0f64.max(info.sup_absf);
    let tol = TOL_PREIMAGE * scale;

    let mut points = vec![0.0; n];
    let mut rows = Vec::with_capacity(n);
    for class in [Class::Symmetric, Class::Skew] {
        let (slots, sources, values) = class_members(pairing, class);
        let refs: Vec<f64> = slots.iter().map(|&s| reference_point(s + 1, n, 0.0, PI)).collect();
        let ref_values: Vec<f64> = refs.iter().map(|&y| spec.eval_re(y)).collect();
        let by_sample = argsort(&ref_values);
        let by_value = argsort(&values);

        let mut found: Vec<(f64, f64, usize)> = Vec::with_capacity(slots.len());
        for (r, &j) in by_sample.iter().enumerate() {
            let v = values[by_value[r]];
            let (x, fx) = preimage(spec, pieces, v, refs[j], tol)?;
            found.push((x, fx, by_value[r]));
        }
        found.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (&s, (x, fx, k)) in slots.iter().zip(found) {
            points[s] = x;
            rows.push(MatchRow {
                i: s + 1,
                x,
                fx,
                lam_t: values[k],
                source: sources[k],
                deviation: (fx - values[k]).abs(),
            });
        }
    }
    rows.sort_by_key(|r| r.i);
    let grid = Grid::new(points, 0.0, PI)?;
    let report = MatchReport::from_rows(n, grid.clone(), rows);
    Ok((grid, report))
}

fn preimage(spec: &SymbolSpec, pieces: &[MonotonePiece], v: f64, y: f64, tol: f64) -> Result<(f64, f64)> {
    let solve = |p: &MonotonePiece| -> (f64, f64) {
        let x = match p.direction {
            Direction::Constant => y.clamp(p.lo, p.hi),
            _ => p.solve(spec, v).expect("monotone piece"),
        };
        (x, spec.eval_piece(p.piece, x).re)
    };
    // A constant piece only counts when it matches to rounding level, so that
    // values just off the plateau go to a piece that attains them.
    let strict = |p: &MonotonePiece| match p.direction {
        Direction::Constant => p.miss(v) <= 1e-3 * tol,
        _ => p.miss(v) <= tol,
    };
    let loose = |p: &MonotonePiece| p.miss(v) <= tol;
    for accept in [&strict as &dyn Fn(&MonotonePiece) -> bool, &loose] {
        if let Some(p) = pieces.iter().find(|p| p.contains_x(y) && accept(p)) {
            return Ok(solve(p));
        }
        let mut best: Option<(f64, f64)> = None;
        for p in pieces.iter().filter(|p| accept(p)) {
            let c = solve(p);
            if best.is_none_or(|b| (c.0 - y).abs() < (b.0 - y).abs()) {
                best = Some(c);
            }
        }
        if let Some(b) = best {
            return Ok(b);
        }
    }
    Err(Error::PreimageMissing {
        value: v,
        miss: pieces.iter().map(|p| p.miss(v)).fold(f64::INFINITY, f64::min),
    })
}
