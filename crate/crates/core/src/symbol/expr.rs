use std::collections::BTreeMap;

use num_complex::Complex64;

/// Closed-form expression in the variable `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Complex(Complex64),
    Var,
    /// cos(freq · t)
    Cos(f64),
    /// sin(freq · t)
    Sin(f64),
    /// exp(i · freq · t)
    ExpI(f64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, f64),
    /// The inner expression evaluated at `t - shift`.
    Shift(Box<Expr>, f64),
}

impl Expr {
    pub fn eval(&self, t: f64) -> Complex64 {
        match self {
            Expr::Const(c) => Complex64::new(*c, 0.0),
            Expr::Complex(c) => *c,
            Expr::Var => Complex64::new(t, 0.0),
            Expr::Cos(w) => Complex64::new((w * t).cos(), 0.0),
            Expr::Sin(w) => Complex64::new((w * t).sin(), 0.0),
            Expr::ExpI(w) => Complex64::from_polar(1.0, w * t),
            Expr::Neg(e) => -e.eval(t),
            Expr::Add(a, b) => a.eval(t) + b.eval(t),
            Expr::Sub(a, b) => a.eval(t) - b.eval(t),
            Expr::Mul(a, b) => a.eval(t) * b.eval(t),
            Expr::Div(a, d) => a.eval(t) / *d,
            Expr::Shift(e, s) => e.eval(t - s),
        }
    }

    /// Laurent coefficients in `e^{it}` when the expression is a
    /// trigonometric polynomial with integer frequencies.
    pub fn trig_poly(&self) -> Option<TrigPoly> {
        let as_int = |w: f64| (w.fract() == 0.0 && w.abs() < 1e6).then_some(w as i64);
        let half = Complex64::new(0.5, 0.0);
        let poly = match self {
            Expr::Const(c) => TrigPoly::constant(Complex64::new(*c, 0.0)),
            Expr::Complex(c) => TrigPoly::constant(*c),
            Expr::Var | Expr::Shift(..) => return None,
            Expr::Cos(w) => {
                let k = as_int(*w)?;
                TrigPoly::from_terms([(k, half), (-k, half)])
            }
            Expr::Sin(w) => {
                let k = as_int(*w)?;
                TrigPoly::from_terms([(k, Complex64::new(0.0, -0.5)), (-k, Complex64::new(0.0, 0.5))])
            }
            Expr::ExpI(w) => TrigPoly::from_terms([(as_int(*w)?, Complex64::new(1.0, 0.0))]),
            Expr::Neg(e) => e.trig_poly()?.scale(Complex64::new(-1.0, 0.0)),
            Expr::Add(a, b) => a.trig_poly()?.add(&b.trig_poly()?, 1.0),
            Expr::Sub(a, b) => a.trig_poly()?.add(&b.trig_poly()?, -1.0),
            Expr::Mul(a, b) => a.trig_poly()?.mul(&b.trig_poly()?),
            Expr::Div(a, d) => a.trig_poly()?.scale(Complex64::new(1.0 / d, 0.0)),
        };
        Some(poly)
    }
}

/// Sparse trigonometric polynomial `Σ c_k e^{ikt}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPoly {
    coeffs: BTreeMap<i64, Complex64>,
}

impl TrigPoly {
    pub fn constant(c: Complex64) -> Self {
        TrigPoly::from_terms([(0, c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            *coeffs.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        TrigPoly { coeffs }.pruned()
    }

    fn pruned(mut self) -> Self {
        self.coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        self
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, *c))
    }

    /// Largest |k| carrying a nonzero coefficient (0 for constants).
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(|k| k.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().all(|(k, c)| self.coeff(-k) == *c)
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.terms().map(|(k, c)| c * Complex64::from_polar(1.0, k as f64 * t)).sum()
    }

    fn scale(self, s: Complex64) -> Self {
        TrigPoly::from_terms(self.coeffs.into_iter().map(|(k, c)| (k, c * s)))
    }

    fn add(&self, other: &TrigPoly, sign: f64) -> Self {
        TrigPoly::from_terms(self.terms().chain(other.terms().map(|(k, c)| (k, c * sign))))
    }

    fn mul(&self, other: &TrigPoly) -> Self {
        TrigPoly::from_terms(
            self.terms()
                .flat_map(|(j, a)| other.terms().map(move |(k, b)| (j + k, a * b))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_product_expands() {
        // 2 cos(t) cos(t) = 1 + cos(2t)
        let e = Expr::Mul(
            Box::new(Expr::Mul(Box::new(Expr::Const(2.0)), Box::new(Expr::Cos(1.0)))),
            Box::new(Expr::Cos(1.0)),
        );
        let p = e.trig_poly().unwrap();
        assert_eq!(p.degree(), 2);
        assert!((p.coeff(0).re - 1.0).abs() < 1e-15);
        assert!((p.coeff(2).re - 0.5).abs() < 1e-15);
        assert!(p.is_even());
    }

    #[test]
    fn non_polynomial_terms() {
        assert!(Expr::Var.trig_poly().is_none());
        assert!(Expr::Cos(0.5).trig_poly().is_none());
        assert_eq!(Expr::Cos(0.0).trig_poly().unwrap().coeff(0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn sine_is_odd() {
        let p = Expr::Sin(3.0).trig_poly().unwrap();
        assert!(!p.is_even());
        let t = 0.37;
        assert!((p.eval(t) - Complex64::new((3.0 * t).sin(), 0.0)).norm() < 1e-15);
    }
}
