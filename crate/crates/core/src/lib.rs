//! Spectral analysis of flipped Toeplitz matrices generated by a symbol.

pub mod cli;
pub mod corpus;
pub mod distribution;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod grids;
pub mod krylov;
pub mod linalg;
pub mod localize;
pub mod matgen;
pub mod numeric;
pub mod presets;
pub mod spectra;
pub mod symbol;

pub use error::{Error, Result};
pub use exec::Execution;
