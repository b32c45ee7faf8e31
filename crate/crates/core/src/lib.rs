//! Clamped transmission eigenvalues of planar domains.
//!
//! Boundary-integral (Nyström) discretisations of the Helmholtz and
//! modified-Helmholtz layer operators on analytic closed curves, solved for
//! their singular wavenumbers with a contour-integral nonlinear eigensolver.
//! Alongside the transmission eigenvalues the crate computes Dirichlet and
//! Neumann Laplacian eigenvalues, separation-of-variables references for the
//! disk, and the Fourier-diagonal Dirichlet-to-Neumann map of the exterior
//! modified-Helmholtz problem.

pub mod error;
pub mod specfun;
pub mod geometry;
pub mod bie;
pub mod nep;
pub mod dtn;
pub mod oracle;
pub mod report;
pub mod tables;

pub use error::{Error, Result};
pub use num_complex::Complex64;
