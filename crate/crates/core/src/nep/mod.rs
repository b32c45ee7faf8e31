//! Nonlinear eigenvalue machinery: dense kernels, the contour solver and the
//! real-axis sweep built on it.

pub mod beyn;
pub mod linalg;
pub mod sweep;

pub use beyn::{beyn_run, beyn_solve, is_effectively_real, BeynOptions, BeynOutcome, ContourSpec, EigenResult};
pub use linalg::{dense_eig, dense_lu_solve, dense_svd, LuFactor, LuSolution, SvdResult};
pub use sweep::{sweep, Rejected, SweepOutcome, SweepSpec, Verdict};
