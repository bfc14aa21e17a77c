use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid piece partition: {0}")]
    Partition(String),

    #[error("unbounded expression: {0}")]
    Unbounded(String),

    #[error("quadrature did not converge for k = {k} (estimated error {estimate:.3e})")]
    Quadrature { k: i64, estimate: f64 },

    #[error("symbol is not real-valued (imaginary part {imag:.3e} at x = {x})")]
    NonReal { x: f64, imag: f64 },

    #[error("coefficients cover |k| <= {available}, order {n} needs |k| <= {}", n - 1)]
    InsufficientCoefficients { n: usize, available: usize },

    #[error("symbol is not a trigonometric polynomial")]
    NotTrigPoly,

    #[error("circulant of order {n} needs n >= 2r + 1 = {}", 2 * r + 1)]
    CirculantTooSmall { n: usize, r: usize },

    #[error("matrix is not symmetric (deviation {0:.3e})")]
    NotSymmetric(f64),

    #[error("operation needs real coefficients")]
    ComplexCoefficients,

    #[error("eigensolver did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("grid is empty")]
    EmptyGrid,

    #[error("squared singular values and squared eigenvalues disagree by {0:.3e}")]
    OrderingMismatch(f64),

    #[error("eigenvalue {value} has no preimage under the symbol (nearest miss {miss:.3e})")]
    PreimageMissing { value: f64, miss: f64 },

    #[error("MINRES stagnated at relative residual {0:.3e}")]
    Stagnation(f64),

    #[error("localization violated: {0}")]
    Violation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
