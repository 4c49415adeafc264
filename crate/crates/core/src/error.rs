use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not_hermitian: matrix deviates from Hermitian symmetry by {max_dev:e}")]
    NotHermitian { max_dev: f64 },

    #[error("not_psd: eigenvalue {eigenvalue:e} below the PSD clamp threshold")]
    NotPsd { eigenvalue: f64 },

    #[error("bad_trace: |Tr rho - 1| = {dev:e} exceeds tolerance")]
    BadTrace { dev: f64 },

    #[error("bad_dimension: expected {expected}x{expected}, got {got}x{got}")]
    BadDimension { expected: usize, got: usize },

    #[error("invalid_params: {0}")]
    InvalidParams(String),

    #[error("lambda_zero: lambda = 0 is a product state with no region analysis")]
    LambdaZero,

    #[error("invalid_density: {0}")]
    InvalidDensity(String),

    #[error("wrong_region: ({g}, {lambda}) is not in Region I")]
    WrongRegion { g: f64, lambda: f64 },

    #[error("quadrature_not_converged: tolerance {tol:e} not reached within {panels} panels")]
    QuadratureNotConverged { tol: f64, panels: u32 },

    #[error("negative_distance: r = {0} must be non-negative")]
    NegativeDistance(f64),

    #[error("not_normalized: coefficient norm deviates from 1 by {dev:e}")]
    NotNormalized { dev: f64 },

    #[error("non_positive: correlation energy {0} must be > 0")]
    NonPositive(f64),

    #[error("parse_error: line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invariant_violation: row {row}: {message}")]
    InvariantViolation { row: usize, message: String },

    #[error("too_few_samples: need at least {need}, got {got}")]
    TooFewSamples { need: usize, got: usize },

    #[error("singular_basis: fit basis is degenerate (all abscissae equal?)")]
    SingularBasis,

    #[error("io_error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
