//! Seeded random trigonometric polynomials.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::symbol::{FourierCoeffs, SymbolSpec, TrigPoly};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub degree: usize,
    pub coeffs: FourierCoeffs,
    pub spec: SymbolSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Real coefficients with `f_{-k} = f_k`.
    RealEven,
    /// Real coefficients, independent for `±k`.
    Real,
}

/// `count` random polynomials with degrees drawn uniformly from
/// `min_degree..=max_degree` and coefficients uniform in `[-1, 1]`.
pub fn random_trig_polys(seed: u64, count: usize, min_degree: usize, max_degree: usize, kind: Kind) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = rng.random_range(min_degree..=max_degree);
            let mut values = vec![0.0; 2 * r + 1];
            for k in 0..=r {
                let c: f64 = rng.random_range(-1.0..1.0);
                values[r + k] = c;
                values[r - k] = match kind {
                    Kind::RealEven => c,
                    Kind::Real if k == 0 => c,
                    Kind::Real => rng.random_range(-1.0..1.0),
                };
            }
            // keep the leading coefficient away from zero so the degree is exact
            if r > 0 && values[2 * r].abs() < 0.1 {
                values[2 * r] = 0.1f64.copysign(values[2 * r]);
                if kind == Kind::RealEven {
                    values[0] = values[2 * r];
                }
            }
            entry(r, &values)
        })
        .collect()
}

fn entry(r: usize, values: &[f64]) -> CorpusEntry {
    let coeffs = FourierCoeffs::real(values, Some(r)).expect("odd length");
    let poly = TrigPoly::from_terms(
        values
            .iter()
            .enumerate()
            .map(|(i, v)| (i as i64 - r as i64, Complex64::new(*v, 0.0))),
    );
    CorpusEntry {
        degree: r,
        coeffs,
        spec: SymbolSpec::from_trig_poly(&poly),
    }
}
