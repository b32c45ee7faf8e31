//! Fourier-diagonal Dirichlet-to-Neumann map of the exterior modified
//! Helmholtz problem on a circle of radius `R`.
//!
//! For `Δu − k²u = 0` outside `B_R` with `u = f` on the circle, mode `n`
//! of `∂_r u` is `d_n f_n` with `d_n = γ_{|n|}(k) − |n|/R` and
//! `γ_n(k) = −k K_{n−1}(kR)/K_n(kR)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::bessel_k_scaled;

fn check(k: f64, radius: f64) -> Result<()> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("wavenumber must be nonnegative, got {k}")));
    }
    Ok(())
}

/// Ratios `K_{m−1}(x)/K_m(x)` for `m = 0..=n` (with `K_{−1} = K_1`).
///
/// Starts from exponentially scaled `K_0`, `K_1` so large arguments neither
/// underflow nor overflow, then runs `K_m/K_{m+1} = 1/(K_{m−1}/K_m + 2m/x)`.
pub fn k_ratios(n: usize, x: f64) -> Result<Vec<f64>> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("K ratio needs x > 0, got {x}")));
    }
    let z = Complex64::new(x, 0.0);
    let k0 = bessel_k_scaled(0, z)?.re;
    let k1 = bessel_k_scaled(1, z)?.re;
    let mut out = Vec::with_capacity(n + 1);
    out.push(k1 / k0);
    if n >= 1 {
        out.push(k0 / k1);
    }
    for m in 1..n {
        let r = out[m];
        out.push(1.0 / (r + 2.0 * m as f64 / x));
    }
    Ok(out)
}

/// `γ_n(k)` for a circle of radius `R`; `k > 0`.
pub fn gamma_n(n: usize, k: f64, radius: f64) -> Result<f64> {
    check(k, radius)?;
    if k == 0.0 {
        return Err(Error::Domain("gamma_n needs k > 0".into()));
    }
    Ok(-k * k_ratios(n, k * radius)?[n])
}

/// Small-`k` form `−k²R/(2n)` quoted for `n ≥ 2`.
pub fn gamma_small_k(n: usize, k: f64, radius: f64) -> f64 {
    -k * k * radius / (2.0 * n as f64)
}

/// Leading small-`k` term of `γ_n` from the series of `K_{n−1}`, `K_n`:
/// `−k²R/(2(n−1))` for `n ≥ 2`.
pub fn gamma_leading_term(n: usize, k: f64, radius: f64) -> f64 {
    -k * k * radius / (2.0 * (n as f64 - 1.0))
}

/// Modulus of the small-`k` form `1/(R ln(ikR))` quoted for `n = 0`.
pub fn gamma0_small_k_modulus(k: f64, radius: f64) -> f64 {
    let log = Complex64::new(0.0, k * radius).ln();
    1.0 / (radius * log.norm())
}

/// Truncated DtN operator on modes `−N_f..=N_f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DtnMatrix {
    pub truncation: usize,
    pub radius: f64,
    pub k: f64,
    /// `d_n` for `n = −N_f..=N_f`, in that order.
    pub diagonal: Vec<f64>,
}

impl DtnMatrix {
    /// Entry for mode `n`.
    pub fn entry(&self, n: i64) -> Option<f64> {
        let idx = n + self.truncation as i64;
        if idx < 0 {
            return None;
        }
        self.diagonal.get(idx as usize).copied()
    }

    /// Norm of `self − other` from the `H^{1/2}` to the `H^{−1/2}` Fourier
    /// weights, `max_n |Δd_n| / (1+n²)^{1/2}`.
    pub fn distance(&self, other: &DtnMatrix) -> Result<f64> {
        if self.truncation != other.truncation {
            return Err(Error::Dimension(format!(
                "truncations differ: {} vs {}",
                self.truncation, other.truncation
            )));
        }
        let nf = self.truncation as i64;
        Ok(self
            .diagonal
            .iter()
            .zip(&other.diagonal)
            .zip(-nf..=nf)
            .map(|((a, b), n)| (a - b).abs() / (1.0 + (n * n) as f64).sqrt())
            .fold(0.0, f64::max))
    }
}

pub fn dtn_matrix(k: f64, radius: f64, truncation: usize) -> Result<DtnMatrix> {
    check(k, radius)?;
    if truncation == 0 {
        return Err(Error::Invalid("truncation order must be at least 1".into()));
    }
    let gammas = if k > 0.0 {
        let r = k_ratios(truncation, k * radius)?;
        r.iter().map(|x| -k * x).collect()
    } else {
        vec![0.0; truncation + 1]
    };
    let nf = truncation as i64;
    let diagonal = (-nf..=nf)
        .map(|n| {
            let m = n.unsigned_abs() as usize;
            gammas[m] - m as f64 / radius
        })
        .collect();
    Ok(DtnMatrix { truncation, radius, k, diagonal })
}

/// `‖T_{ik} − T_{iτ}‖` in the weighted norm of [`DtnMatrix::distance`].
pub fn dtn_continuity_modulus(k: f64, tau: f64, radius: f64, truncation: usize) -> Result<f64> {
    if !(k > 0.0 && tau > 0.0) {
        return Err(Error::Domain(format!("continuity modulus needs k, tau > 0, got {k}, {tau}")));
    }
    if k == tau {
        return Ok(0.0);
    }
    dtn_matrix(k, radius, truncation)?.distance(&dtn_matrix(tau, radius, truncation)?)
}

/// `‖T_{ik} − T_0‖`.
pub fn dtn_distance_to_static(k: f64, radius: f64, truncation: usize) -> Result<f64> {
    dtn_matrix(k, radius, truncation)?.distance(&dtn_matrix(0.0, radius, truncation)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{bessel_k, hankel1};

    #[test]
    fn static_map_entries() {
        let m = dtn_matrix(0.0, 2.0, 3).unwrap();
        assert_eq!(m.diagonal, vec![-1.5, -1.0, -0.5, 0.0, -0.5, -1.0, -1.5]);
    }

    #[test]
    fn ratio_matches_direct_k() {
        let g = gamma_n(2, 1.0, 1.0).unwrap();
        let direct = -bessel_k(1, Complex64::new(1.0, 0.0)).unwrap().re
            / bessel_k(2, Complex64::new(1.0, 0.0)).unwrap().re;
        assert!((g - direct).abs() < 1e-10 * direct.abs());
    }

    #[test]
    fn ratio_matches_hankel_form() {
        // γ_n = ik H_{n−1}(ikR)/H_n(ikR)
        for (n, k, r) in [(1usize, 0.7, 1.0), (3, 2.0, 1.5), (6, 4.0, 0.5)] {
            let z = Complex64::new(0.0, k * r);
            let h = Complex64::new(0.0, k) * hankel1(n as i32 - 1, z).unwrap() / hankel1(n as i32, z).unwrap();
            let g = gamma_n(n, k, r).unwrap();
            assert!((h - g).norm() < 1e-10 * g.abs(), "n={n}: {h} vs {g}");
        }
    }

    #[test]
    fn large_argument_is_finite() {
        let g = gamma_n(3, 800.0, 1.0).unwrap();
        assert!(g.is_finite() && g < 0.0);
        assert!((g / -800.0 - 1.0).abs() < 1e-2);
    }

    #[test]
    fn leading_term_is_sharp() {
        for n in 2..=40 {
            let g = gamma_n(n, 1e-3, 1.0).unwrap();
            let lead = gamma_leading_term(n, 1e-3, 1.0);
            assert!((g - lead).abs() <= 1e-3 * lead.abs(), "n={n}");
        }
    }

    #[test]
    fn zero_gap_modulus_is_zero() {
        assert_eq!(dtn_continuity_modulus(1.3, 1.3, 1.0, 10).unwrap(), 0.0);
    }

    #[test]
    fn domain_errors() {
        assert!(dtn_matrix(-1.0, 1.0, 4).is_err());
        assert!(dtn_matrix(1.0, 0.0, 4).is_err());
        assert!(gamma_n(1, 0.0, 1.0).is_err());
    }
}
