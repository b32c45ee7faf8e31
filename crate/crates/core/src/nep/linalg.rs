//! Dense complex linear algebra used by the contour solver: pivoted LU with a
//! 1-norm condition estimate, and the thin SVD.

use faer::linalg::solvers::{PartialPivLu, Solve};
use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = Mat<Complex64>;

/// Condition estimates above this are flagged as ill-conditioned.
pub const ILL_CONDITIONED: f64 = 1e12;

/// A factored square matrix.
pub struct LuFactor {
    lu: PartialPivLu<Complex64>,
    norm1: f64,
    dim: usize,
}

impl std::fmt::Debug for LuFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LuFactor").field("dim", &self.dim).field("norm1", &self.norm1).finish()
    }
}

fn norm1(a: &CMat) -> f64 {
    (0..a.ncols())
        .map(|j| (0..a.nrows()).map(|i| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn frobenius(a: &CMat) -> f64 {
    a.norm_l2()
}

impl LuFactor {
    /// Factor `a` with partial pivoting. Fails on an exactly zero pivot or a
    /// pivot that is zero to working precision relative to `‖a‖₁`.
    pub fn new(a: &CMat) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::Dimension(format!("LU of {}x{} matrix", a.nrows(), a.ncols())));
        }
        let dim = a.nrows();
        let norm1 = norm1(a);
        if !norm1.is_finite() {
            return Err(Error::NonFinite(norm1));
        }
        let lu = a.partial_piv_lu();
        let u = lu.U();
        for k in 0..dim {
            let p = u[(k, k)].norm();
            if p == 0.0 || p <= f64::EPSILON * 1e-2 * norm1 {
                return Err(Error::Singular { pivot: k });
            }
        }
        Ok(Self { lu, norm1, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn solve(&self, b: &CMat) -> Result<CMat> {
        if b.nrows() != self.dim {
            return Err(Error::Dimension(format!("rhs has {} rows, expected {}", b.nrows(), self.dim)));
        }
        Ok(self.lu.solve(b))
    }

    /// Hager–Higham estimate of `κ₁(A) = ‖A‖₁‖A⁻¹‖₁` (a lower bound that is
    /// usually within a small factor).
    pub fn condition_estimate(&self) -> f64 {
        let n = self.dim;
        if n == 0 {
            return 1.0;
        }
        let mut x = CMat::from_fn(n, 1, |_, _| Complex64::new(1.0 / n as f64, 0.0));
        let mut estimate = 0.0;
        let mut last_index = usize::MAX;
        for _ in 0..5 {
            let y = self.lu.solve(&x);
            estimate = (0..n).map(|i| y[(i, 0)].norm()).sum::<f64>();
            let xi = CMat::from_fn(n, 1, |i, _| {
                let v = y[(i, 0)];
                if v.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { v / v.norm() }
            });
            let z = self.lu.solve_adjoint(&xi);
            let (mut best, mut idx) = (0.0, 0);
            for i in 0..n {
                if z[(i, 0)].norm() > best {
                    best = z[(i, 0)].norm();
                    idx = i;
                }
            }
            let ztx: f64 = (0..n).map(|i| (z[(i, 0)].conj() * x[(i, 0)]).re).sum();
            if best <= ztx || idx == last_index {
                break;
            }
            last_index = idx;
            x = CMat::zeros(n, 1);
            x[(idx, 0)] = Complex64::new(1.0, 0.0);
        }
        estimate * self.norm1
    }
}

/// Solution of `AX = B` with the condition estimate of `A`.
#[derive(Debug, Clone)]
pub struct LuSolution {
    pub x: CMat,
    pub condition: f64,
}

impl LuSolution {
    pub fn ill_conditioned(&self) -> bool {
        !(self.condition <= ILL_CONDITIONED)
    }
}

pub fn dense_lu_solve(a: &CMat, b: &CMat) -> Result<LuSolution> {
    let f = LuFactor::new(a)?;
    let x = f.solve(b)?;
    Ok(LuSolution { x, condition: f.condition_estimate() })
}

/// Thin SVD `A = U Σ Vᴴ` with nonincreasing singular values.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: CMat,
    pub sigma: Vec<f64>,
    pub v: CMat,
}

pub fn dense_svd(a: &CMat) -> Result<SvdResult> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Ok(SvdResult { u: CMat::zeros(a.nrows(), 0), sigma: vec![], v: CMat::zeros(a.ncols(), 0) });
    }
    if a.nrows() > 1024 || a.ncols() > 1024 {
        return Err(Error::Dimension(format!("SVD limited to 1024x1024, got {}x{}", a.nrows(), a.ncols())));
    }
    let svd = a.thin_svd().map_err(|_| Error::NoConvergence("singular value decomposition"))?;
    let s = svd.S().column_vector();
    let sigma: Vec<f64> = (0..s.nrows()).map(|i| s[i].re).collect();
    if sigma.iter().any(|x| !x.is_finite()) {
        return Err(Error::NoConvergence("singular value decomposition"));
    }
    Ok(SvdResult { u: svd.U().to_owned(), sigma, v: svd.V().to_owned() })
}

/// Eigenvalues and right eigenvectors of a small dense matrix.
pub fn dense_eig(a: &CMat) -> Result<(Vec<Complex64>, CMat)> {
    let e = a.eigen().map_err(|_| Error::NoConvergence("dense eigenproblem"))?;
    let s = e.S().column_vector();
    Ok(((0..s.nrows()).map(|i| s[i]).collect(), e.U().to_owned()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let a = CMat::identity(4, 4);
        let b = CMat::from_fn(4, 2, |i, j| c(i as f64, j as f64));
        let s = dense_lu_solve(&a, &b).unwrap();
        assert!((&s.x - &b).norm_l2() == 0.0);
        assert!((s.condition - 1.0).abs() < 1e-14);
    }

    #[test]
    fn exact_singularity_reports_pivot() {
        let mut a = CMat::identity(3, 3);
        a[(1, 1)] = c(0.0, 0.0);
        assert!(matches!(LuFactor::new(&a), Err(Error::Singular { .. })));
    }

    #[test]
    fn diagonal_svd_sorted() {
        let mut a = CMat::zeros(3, 3);
        a[(0, 0)] = c(1.0, 0.0);
        a[(1, 1)] = c(5.0, 0.0);
        a[(2, 2)] = c(3.0, 0.0);
        let s = dense_svd(&a).unwrap();
        for (got, want) in s.sigma.iter().zip([5.0, 3.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn rank_one_outer_product() {
        let a = CMat::from_fn(6, 5, |i, j| c(1.0 + i as f64, 0.5) * c(2.0 - j as f64, -0.3 * j as f64));
        let s = dense_svd(&a).unwrap();
        assert!(s.sigma[1] / s.sigma[0] <= 1e-12);
    }

    #[test]
    fn small_eigenproblem() {
        let a = CMat::from_fn(2, 2, |i, j| if i == j { c(2.0 + 3.0 * i as f64, 0.0) } else { c(0.0, 0.0) });
        let (mut vals, _) = dense_eig(&a).unwrap();
        vals.sort_by(|x, y| x.re.total_cmp(&y.re));
        assert!((vals[0] - 2.0).norm() < 1e-14 && (vals[1] - 5.0).norm() < 1e-14);
    }
}
