use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid weight key {key:?}: {reason}")]
    InvalidWeight { key: Vec<u32>, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size cap exceeded: {what} = {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("polynomial vanishes identically on the sphere")]
    NoNonzeroValue,

    #[error("no restart converged to a stationary point within budget ({restarts} restarts)")]
    NonConvergence { restarts: usize },

    #[error("V(x) = 0 at the requested direction")]
    ZeroValue,

    #[error(
        "critical point {index} fails the Lagrange residual check: {residual:e} > {tolerance:e}"
    )]
    ResidualCheck {
        index: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("spherical Hessian has a non-negative eigenvalue {eigenvalue:e}; x is not a nondegenerate maximum")]
    PositiveEigenvalue { eigenvalue: f64 },

    #[error("degenerate critical point {index}: |det Hess g| = {det_abs:e}")]
    Degenerate { index: usize, det_abs: f64 },

    #[error("imaginary residual {residual:e} exceeds tolerance relative to real part {real:e}")]
    ImaginaryResidual { residual: f64, real: f64 },

    #[error("quadrature supports c <= 3 only, got c = {0}")]
    UnsupportedDimension(usize),

    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),

    #[error("configuration error: {0}")]
    Config(String),
}
