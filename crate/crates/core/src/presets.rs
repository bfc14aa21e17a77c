//! Built-in symbols of the worked examples.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::symbol::{parse_symbol_with, Extension, ParseOptions, SymbolSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Constant on `[0, π/2)`, linear on `[π/2, π]`.
    E2,
    /// Isogeometric cubic B-spline stiffness symbol.
    E25,
    /// `cos 2t + cos 3t` on `[0, π/2)`, `t` on `[π/2, π]`.
    E3,
    /// `2 + e^{it}`, the lower bidiagonal Toeplitz matrix.
    Bidiag,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::E2, Preset::E25, Preset::E3, Preset::Bidiag];

    pub fn name(self) -> &'static str {
        match self {
            Preset::E2 => "e2",
            Preset::E25 => "e2.5",
            Preset::E3 => "e3",
            Preset::Bidiag => "bidiag",
        }
    }

    pub fn text(self) -> &'static str {
        match self {
            Preset::E2 => "1 on [0,pi/2); t + 1 - pi/2 on [pi/2,pi]",
            Preset::E25 => "2/3 - 1/4*cos(t) - 2/5*cos(2*t) - 1/60*cos(3*t)",
            Preset::E3 => "cos(2*t) + cos(3*t) on [0,pi/2); t on [pi/2,pi]",
            Preset::Bidiag => "2 + exp(i*1*t)",
        }
    }

    pub fn extension(self) -> Extension {
        match self {
            Preset::Bidiag => Extension::None,
            _ => Extension::Even,
        }
    }

    pub fn symbol(self) -> SymbolSpec {
        parse_symbol_with(
            self.text(),
            ParseOptions {
                extension: Some(self.extension()),
            },
        )
        .expect("preset symbols parse")
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown preset '{s}' (e2, e2.5, e3, bidiag)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::BaseDomain;

    #[test]
    fn presets_parse() {
        for p in Preset::ALL {
            let s = p.symbol();
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
            let want = if p == Preset::Bidiag { BaseDomain::Full } else { BaseDomain::Half };
            assert_eq!(s.base_domain(), want);
        }
        assert_eq!(Preset::E25.symbol().trig_degree(), Some(3));
        assert!(Preset::E25.symbol().eval_re(0.0).abs() < 1e-15);
        assert!("e4".parse::<Preset>().is_err());
    }
}
