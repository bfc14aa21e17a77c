//! Scalar numerical kernels: adaptive quadrature, root bracketing, and
//! extremum refinement.

use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-12,
            max_depth: 40,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub converged: bool,
}

fn kronrod15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

/// Adaptive 15-point Gauss–Kronrod integration of a complex integrand over
/// `[a, b]`, bisecting until each leaf meets its share of `abs_tol`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, opts: QuadOptions) -> QuadResult {
    if a == b {
        return QuadResult {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            converged: true,
        };
    }
    let total = (b - a).abs();
    let mut value = Complex64::new(0.0, 0.0);
    let mut error_estimate = 0.0;
    let mut converged = true;
    let mut stack = vec![(a, b, 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, err) = kronrod15(&f, lo, hi);
        let budget = opts.abs_tol * (hi - lo).abs() / total;
        // Leaves whose estimate is at roundoff level cannot improve further.
        let noise = 50.0 * f64::EPSILON * v.norm();
        if err <= budget.max(noise) || depth >= opts.max_depth {
            if err > budget.max(noise) {
                converged = false;
            }
            value += v;
            error_estimate += err;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    QuadResult {
        value,
        error_estimate,
        converged,
    }
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> (f64, bool) {
    let r = integrate(|x| Complex64::new(f(x), 0.0), a, b, opts);
    (r.value.re, r.converged)
}

/// Root of `g` on `[lo, hi]` by bisection, assuming `g(lo)` and `g(hi)` have
/// opposite signs (or one of them is zero). Runs until the bracket stops
/// shrinking in floating point.
pub fn bisect<G: Fn(f64) -> f64>(g: G, mut lo: f64, mut hi: f64) -> f64 {
    let mut glo = g(lo);
    if glo == 0.0 {
        return lo;
    }
    if g(hi) == 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm < 0.0) == (glo < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section search for the maximizer of a unimodal `g` on `[a, b]`.
pub fn golden_max<G: Fn(f64) -> f64>(g: G, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..200 {
        if (b - a).abs() <= 4.0 * f64::EPSILON * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    0.5 * (a + b)
}

/// `count` equispaced points on `[a, b]`, endpoints included.
pub fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![a],
        _ => {
            let h = (b - a) / (count - 1) as f64;
            let mut pts: Vec<f64> = (0..count).map(|i| a + i as f64 * h).collect();
            pts[count - 1] = b;
            pts
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn kronrod_is_exact_for_low_degree_polynomials() {
        let r = integrate(|x| Complex64::new(x.powi(20), 0.0), 0.0, 1.0, QuadOptions::default());
        assert!((r.value.re - 1.0 / 21.0).abs() < 1e-15);
        assert!(r.converged);
    }

    #[test]
    fn oscillatory_integral() {
        // ∫_0^π x cos(kx) dx = ((-1)^k - 1) / k²
        for k in [1.0, 7.0, 300.0, 1023.0] {
            let (v, ok) = integrate_real(|x| x * (k * x).cos(), 0.0, PI, QuadOptions::default());
            let sign = if (k as i64) % 2 == 0 { 1.0 } else { -1.0 };
            let exact = (sign - 1.0) / (k * k);
            assert!(ok);
            assert!((v - exact).abs() < 1e-12, "k={k}: {v} vs {exact}");
        }
    }

    #[test]
    fn bisect_and_golden() {
        let root = bisect(|x| x * x - 2.0, 0.0, 2.0);
        assert!((root - 2f64.sqrt()).abs() < 1e-15);
        let xmax = golden_max(|x| -(x - 0.3).powi(2), 0.0, 1.0);
        assert!((xmax - 0.3).abs() < 1e-7);
    }

    #[test]
    fn linspace_hits_endpoints() {
        let p = linspace(0.0, PI, 5);
        assert_eq!(p[0], 0.0);
        assert_eq!(p[4], PI);
        assert!((p[2] - PI / 2.0).abs() < 1e-15);
    }
}
