use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix is exactly singular (zero pivot at index {pivot})")]
    Singular { pivot: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{0} did not converge")]
    NoConvergence(&'static str),

    #[error("no sign change on [{a}, {b}]")]
    NoSignChange { a: f64, b: f64 },

    #[error("non-finite function value at {0}")]
    NonFinite(f64),

    #[error("scan ceiling {kmax} reached after {found} of {wanted} roots")]
    ScanCeiling { kmax: f64, found: usize, wanted: usize },

    #[error("contour rank saturated at {dim} after {doublings} doublings")]
    RankOverflow { dim: usize, doublings: usize },

    #[error("invalid contour: {0}")]
    Contour(String),

    #[error("unknown shape {0:?}")]
    UnknownShape(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
