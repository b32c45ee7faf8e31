//! Separation-of-variables references: disk spectra from Bessel zeros, disk
//! transmission roots from the mode determinant, the thin-ellipse expansion
//! of the first Dirichlet eigenvalue, and a bracketing root finder.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dtn::k_ratios;
use crate::error::{Error, Result};
use crate::specfun::{bessel_j, bessel_j_prime};

/// Root of `f` in `[a, b]` to absolute tolerance `tol`.
///
/// Secant steps are taken when they stay inside the bracket, alternating with
/// bisection so the bracket at least halves every two iterations.
pub fn bracketed_root<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = if a <= b { (a, b) } else { (b, a) };
    let (mut fa, mut fb) = (f(a), f(b));
    for v in [fa, fb] {
        if !v.is_finite() {
            return Err(Error::NonFinite(v));
        }
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { a, b });
    }
    let mut secant = true;
    for _ in 0..400 {
        if b - a <= tol {
            break;
        }
        let mid = 0.5 * (a + b);
        let x = if secant {
            let s = b - fb * (b - a) / (fb - fa);
            if s > a && s < b { s } else { mid }
        } else {
            mid
        };
        secant = !secant;
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NonFinite(fx));
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    // return the endpoint with the smaller residual
    Ok(if fa.abs() <= fb.abs() { a } else { b })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiskKind {
    Dirichlet,
    Neumann,
    ClampedTe,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskMode {
    pub value: f64,
    /// Angular order `n ≥ 0`.
    pub order: usize,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskSpectrum {
    pub kind: DiskKind,
    pub radius: f64,
    pub modes: Vec<DiskMode>,
}

impl DiskSpectrum {
    /// Values repeated by multiplicity, as the tables list them.
    pub fn values(&self) -> Vec<f64> {
        self.modes.iter().flat_map(|m| std::iter::repeat_n(m.value, m.multiplicity)).collect()
    }

    /// Same spectrum for a disk of radius `r`.
    pub fn scaled(&self, r: f64) -> Self {
        let f = self.radius / r;
        Self {
            kind: self.kind,
            radius: r,
            modes: self.modes.iter().map(|m| DiskMode { value: m.value * f, ..*m }).collect(),
        }
    }
}

const ROOT_TOL: f64 = 1e-13;
const MAX_COUNT: usize = 50;

fn real(z: Complex64) -> f64 {
    z.re
}

/// Positive roots of `f` on `(step, kmax]` by sign-change scan then
/// bracketing.
fn scan_roots<F: FnMut(f64) -> f64>(mut f: F, kmax: f64, step: f64) -> Result<Vec<f64>> {
    let mut roots = Vec::new();
    let mut x0 = step;
    let mut f0 = f(x0);
    let n = (kmax / step).round() as usize;
    for i in 2..=n {
        let x1 = i as f64 * step;
        let f1 = f(x1);
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0.signum() != f1.signum() && f1 != 0.0 {
            roots.push(bracketed_root(&mut f, x0, x1, ROOT_TOL)?);
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(roots)
}

fn collect(kind: DiskKind, count: usize, kmax: f64, step: f64, lead: Vec<DiskMode>) -> Result<DiskSpectrum> {
    if count > MAX_COUNT {
        return Err(Error::Invalid(format!("at most {MAX_COUNT} disk values, asked for {count}")));
    }
    let mut modes = lead;
    let mut empty_orders = 0;
    for n in 0usize.. {
        let f = |k: f64| -> f64 {
            let z = Complex64::new(k, 0.0);
            match kind {
                DiskKind::Dirichlet => bessel_j(n as i32, z).map(real).unwrap_or(f64::NAN),
                DiskKind::Neumann => bessel_j_prime(n as i32, z).map(real).unwrap_or(f64::NAN),
                DiskKind::ClampedTe => te_determinant_scaled(n, k).unwrap_or(f64::NAN),
            }
        };
        let roots = scan_roots(f, kmax, step)?;
        if roots.is_empty() {
            empty_orders += 1;
            if empty_orders == 2 {
                break;
            }
            continue;
        }
        empty_orders = 0;
        let mult = if n == 0 { 1 } else { 2 };
        modes.extend(roots.into_iter().map(|value| DiskMode { value, order: n, multiplicity: mult }));
    }
    modes.sort_by(|a, b| a.value.total_cmp(&b.value));
    let mut out = Vec::new();
    let mut have = 0;
    for m in modes {
        if have >= count {
            break;
        }
        have += m.multiplicity;
        out.push(m);
    }
    if have < count {
        return Err(Error::ScanCeiling { kmax, found: have, wanted: count });
    }
    Ok(DiskSpectrum { kind, radius: 1.0, modes: out })
}

/// First `count` Dirichlet values `j_{n,m}` of the unit disk.
pub fn disk_dirichlet(count: usize) -> Result<DiskSpectrum> {
    let kmax = 6.0 + 2.5 * (count as f64).sqrt() * 2.0;
    collect(DiskKind::Dirichlet, count, kmax, 0.01, Vec::new())
}

/// First `count` Neumann values `j'_{n,m}` of the unit disk, starting with 0.
pub fn disk_neumann(count: usize) -> Result<DiskSpectrum> {
    let kmax = 6.0 + 2.5 * (count as f64).sqrt() * 2.0;
    let zero = DiskMode { value: 0.0, order: 0, multiplicity: 1 };
    collect(DiskKind::Neumann, count, kmax, 0.01, vec![zero])
}

/// Default scan ceiling for [`disk_te_roots`].
pub const TE_KMAX: f64 = 12.0;

/// First `count` clamped transmission values of the unit disk.
pub fn disk_te_roots(count: usize) -> Result<DiskSpectrum> {
    disk_te_roots_with(count, TE_KMAX, 0.01)
}

pub fn disk_te_roots_with(count: usize, kmax: f64, step: f64) -> Result<DiskSpectrum> {
    collect(DiskKind::ClampedTe, count, kmax, step, Vec::new())
}

/// `W_n(k) = J_n(k) K_n'(k) − J_n'(k) K_n(k)` divided by `K_n(k) > 0`, which
/// has the same roots and sign but no overflow for large `n`.
pub fn te_determinant_scaled(n: usize, k: f64) -> Result<f64> {
    let z = Complex64::new(k, 0.0);
    let j = bessel_j(n as i32, z)?.re;
    let jp = bessel_j_prime(n as i32, z)?.re;
    // K_n'/K_n = −K_{n−1}/K_n − n/k
    let log_deriv = -k_ratios(n, k)?[n] - n as f64 / k;
    Ok(j * log_deriv - jp)
}

/// Unscaled `W_n(k)`.
pub fn te_determinant(n: usize, k: f64) -> Result<f64> {
    let kn = crate::specfun::bessel_k(n as i32, Complex64::new(k, 0.0))?.re;
    Ok(te_determinant_scaled(n, k)? * kn)
}

/// First Dirichlet eigenvalue `λ₁` of the ellipse with semi-axes `1` and
/// `ε`: the four-term thin-ellipse expansion for `ε < 1`, `j_{0,1}²` for the
/// disk.
pub fn ellipse_lambda1(eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Domain(format!("ellipse aspect must lie in (0, 1], got {eps}")));
    }
    if eps == 1.0 {
        let j01 = disk_dirichlet(1)?.modes[0].value;
        return Ok(j01 * j01);
    }
    Ok(PI * PI / (4.0 * eps * eps) + PI / (2.0 * eps) + 0.75 + (11.0 / (8.0 * PI) + PI / 12.0) * eps)
}
