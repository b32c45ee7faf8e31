//! Nyström discretisation of the 2D layer operators with Kress's
//! logarithmic product quadrature, and the three holomorphic matrix families
//! whose singular wavenumbers are the Dirichlet, Neumann and clamped
//! transmission eigenvalues.
//!
//! Each kernel is split as `M(t, s) = M1(t, s) ln(4 sin^2((t - s)/2)) + M2(t, s)`
//! with `M1`, `M2` analytic; the log part is integrated exactly against the
//! trigonometric interpolant and the smooth part with the trapezoid rule.

use std::f64::consts::PI;

use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BoundaryDiscretization, Point};
use crate::specfun::{bessel_ik01, bessel_jh01, EULER_GAMMA};

pub type CMat = Mat<Complex64>;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    /// `(i/4) H_0^{(1)}(z r)`
    Helmholtz,
    /// `(1/2pi) K_0(z r)`
    Modified,
}

/// Fundamental solution of `Δu + z²u = 0` or `Δu − z²u = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelFamily {
    pub kind: KernelKind,
    pub z: Complex64,
}

/// Radial data of a kernel at one separation `r > 0`.
#[derive(Debug, Clone, Copy)]
struct Radial {
    /// Φ(r)
    phi: Complex64,
    /// Coefficient of `ln(4 sin^2)` in Φ.
    phi_log: Complex64,
    /// Φ'(r)
    dphi: Complex64,
    /// Coefficient of `ln(4 sin^2)` in Φ'.
    dphi_log: Complex64,
}

impl KernelFamily {
    pub fn helmholtz(z: Complex64) -> Self {
        Self { kind: KernelKind::Helmholtz, z }
    }

    pub fn modified(z: Complex64) -> Self {
        Self { kind: KernelKind::Modified, z }
    }

    fn check(&self) -> Result<()> {
        let z = self.z;
        let ok = match self.kind {
            KernelKind::Helmholtz => z != Complex64::new(0.0, 0.0) && !(z.im == 0.0 && z.re < 0.0),
            KernelKind::Modified => z.re > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("{:?} kernel undefined at z = {z}", self.kind)))
        }
    }

    /// Kernel value Φ at separation `r > 0`.
    pub fn value(&self, r: f64) -> Result<Complex64> {
        Ok(self.radial(r)?.phi)
    }

    /// Radial derivative Φ'(r).
    pub fn radial_derivative(&self, r: f64) -> Result<Complex64> {
        Ok(self.radial(r)?.dphi)
    }

    fn radial(&self, r: f64) -> Result<Radial> {
        let z = self.z;
        let w = z * r;
        Ok(match self.kind {
            KernelKind::Helmholtz => {
                let (j0, j1, h0, h1) = bessel_jh01(w)?;
                Radial {
                    phi: 0.25 * I * h0,
                    phi_log: -j0 / (4.0 * PI),
                    dphi: -0.25 * I * z * h1,
                    dphi_log: z * j1 / (4.0 * PI),
                }
            }
            KernelKind::Modified => {
                let (i0, i1, k0, k1) = bessel_ik01(w)?;
                Radial {
                    phi: k0 / (2.0 * PI),
                    phi_log: -i0 / (4.0 * PI),
                    dphi: -z * k1 / (2.0 * PI),
                    dphi_log: -z * i1 / (4.0 * PI),
                }
            }
        })
    }

    /// Constant term `B0` of `Φ(r) = -ln(r)/(2π) + B0 + o(1)`.
    fn log_offset(&self) -> Complex64 {
        let base = -((0.5 * self.z).ln() + EULER_GAMMA) / (2.0 * PI);
        match self.kind {
            KernelKind::Helmholtz => base + 0.25 * I,
            KernelKind::Modified => base,
        }
    }
}

/// Kress weights `R_k`, `k = 0..2n`, for `∫ ln(4 sin^2((t-s)/2)) f(s) ds`
/// on `2n` equispaced nodes; the weight for node pair `(i, j)` is
/// `R_{|i-j|}`.
pub fn log_quadrature_weights(half: usize) -> Vec<f64> {
    let n = half as f64;
    (0..2 * half)
        .map(|k| {
            let mut sum = 0.0;
            for m in 1..half {
                sum += (m as f64 * k as f64 * PI / n).cos() / m as f64;
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            -2.0 * PI / n * sum - PI / (n * n) * sign
        })
        .collect()
}

/// Which layer operators to assemble.
#[derive(Debug, Clone, Copy, Default)]
pub struct LayerSelection {
    pub single: bool,
    pub double: bool,
    pub adjoint: bool,
}

impl LayerSelection {
    pub const ALL: Self = Self { single: true, double: true, adjoint: true };
}

/// Assembled single-layer `S`, double-layer `D` and adjoint double-layer
/// `D^T` matrices (empty `0×0` where not requested).
#[derive(Debug, Clone)]
pub struct LayerOperators {
    pub single: CMat,
    pub double: CMat,
    pub adjoint: CMat,
}

/// Assemble the requested boundary operators for `kernel` on `bd`.
pub fn assemble_layers(
    bd: &BoundaryDiscretization,
    kernel: &KernelFamily,
    which: LayerSelection,
) -> Result<LayerOperators> {
    kernel.check()?;
    let nodes = bd.len();
    let half = bd.half();
    let weights = log_quadrature_weights(half);
    let h = PI / half as f64;
    let dim = |on: bool| if on { nodes } else { 0 };
    let mut ops = LayerOperators {
        single: CMat::zeros(dim(which.single), dim(which.single)),
        double: CMat::zeros(dim(which.double), dim(which.double)),
        adjoint: CMat::zeros(dim(which.adjoint), dim(which.adjoint)),
    };
    let offset = kernel.log_offset();

    for i in 0..nodes {
        let (xi, di, ji) = (bd.points[i], bd.tangents[i], bd.jacobians[i]);
        // self-interaction limits
        if which.single {
            let smooth = (offset - ji.ln() / (2.0 * PI)) * ji;
            let log_part = -ji / (4.0 * PI);
            ops.single[(i, i)] = weights[0] * log_part + h * smooth;
        }
        let curvature_limit = Complex64::new(-bd.curvatures[i] * ji / (4.0 * PI), 0.0);
        if which.double {
            ops.double[(i, i)] = h * curvature_limit;
        }
        if which.adjoint {
            ops.adjoint[(i, i)] = h * curvature_limit;
        }

        for j in (i + 1)..nodes {
            let (xj, dj, jj) = (bd.points[j], bd.tangents[j], bd.jacobians[j]);
            let diff: Point = [xi[0] - xj[0], xi[1] - xj[1]];
            let r = diff[0].hypot(diff[1]);
            let rad = kernel.radial(r)?;
            let k = j - i;
            let lw = weights[k];
            let log4sin2 = (4.0 * (0.5 * (bd.params[i] - bd.params[j])).sin().powi(2)).ln();

            if which.single {
                // kernel is symmetric in (i, j) apart from the density Jacobian
                let base = rad.phi;
                let base_log = rad.phi_log;
                let smooth = base - base_log * log4sin2;
                ops.single[(i, j)] = (lw * base_log + h * smooth) * jj;
                ops.single[(j, i)] = (lw * base_log + h * smooth) * ji;
            }
            if which.double || which.adjoint {
                let g = -rad.dphi / r;
                let g_log = -rad.dphi_log / r;
                // ν(y)|x'(s)| · (x - y) with y = x_j, x = x_i
                let bj = dj[1] * diff[0] - dj[0] * diff[1];
                // ν(y)|x'(s)| · (x - y) with y = x_i, x = x_j
                let bi = -(di[1] * diff[0] - di[0] * diff[1]);
                if which.double {
                    ops.double[(i, j)] = entry(g * bj, g_log * bj, lw, h, log4sin2);
                    ops.double[(j, i)] = entry(g * bi, g_log * bi, lw, h, log4sin2);
                }
                if which.adjoint {
                    // ∂_{ν(x)}Φ = Φ'(r) ν(x)·(x - y)/r; ν(x_i)|x'_i| · (x_i - x_j) = -bi
                    let s_ij = jj / ji;
                    let s_ji = ji / jj;
                    ops.adjoint[(i, j)] = entry(g * bi, g_log * bi, lw, h, log4sin2) * s_ij;
                    ops.adjoint[(j, i)] = entry(g * bj, g_log * bj, lw, h, log4sin2) * s_ji;
                }
            }
        }
    }
    Ok(ops)
}

fn entry(full: Complex64, log: Complex64, lw: f64, h: f64, log4sin2: f64) -> Complex64 {
    lw * log + h * (full - log * log4sin2)
}

pub fn assemble_single_layer(bd: &BoundaryDiscretization, kernel: &KernelFamily) -> Result<CMat> {
    let which = LayerSelection { single: true, ..Default::default() };
    Ok(assemble_layers(bd, kernel, which)?.single)
}

pub fn assemble_double_layer(bd: &BoundaryDiscretization, kernel: &KernelFamily) -> Result<CMat> {
    let which = LayerSelection { double: true, ..Default::default() };
    Ok(assemble_layers(bd, kernel, which)?.double)
}

pub fn assemble_adjoint_double_layer(
    bd: &BoundaryDiscretization,
    kernel: &KernelFamily,
) -> Result<CMat> {
    let which = LayerSelection { adjoint: true, ..Default::default() };
    Ok(assemble_layers(bd, kernel, which)?.adjoint)
}

/// A holomorphic matrix-valued map `z ↦ T(z)` of fixed size.
pub trait OperatorFamily: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, z: Complex64) -> Result<CMat>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyRole {
    /// `-I/2 + D_z`
    Dirichlet,
    /// `I/2 + D^T_z`
    Neumann,
    /// `[[S^H, S^M], [I/2 + D^T,H, -I/2 + D^T,M]]`
    ClampedTe,
}

/// Boundary-integral family for one eigenvalue problem on one boundary.
#[derive(Debug, Clone)]
pub struct HolomorphicOperatorFamily {
    pub role: FamilyRole,
    pub boundary: BoundaryDiscretization,
}

pub fn dirichlet_family(bd: &BoundaryDiscretization) -> HolomorphicOperatorFamily {
    HolomorphicOperatorFamily { role: FamilyRole::Dirichlet, boundary: bd.clone() }
}

pub fn neumann_family(bd: &BoundaryDiscretization) -> HolomorphicOperatorFamily {
    HolomorphicOperatorFamily { role: FamilyRole::Neumann, boundary: bd.clone() }
}

pub fn clamped_te_family(bd: &BoundaryDiscretization) -> HolomorphicOperatorFamily {
    HolomorphicOperatorFamily { role: FamilyRole::ClampedTe, boundary: bd.clone() }
}

fn add_identity(m: &mut CMat, scale: f64) {
    for i in 0..m.nrows() {
        m[(i, i)] += Complex64::new(scale, 0.0);
    }
}

/// Weight applied to the normal-derivative block row of the transmission
/// system. It behaves like `1/max(1, |z|)` in size but is holomorphic and
/// zero-free on `Re z > -1`, so it leaves the eigenvalues and the contour
/// integrals intact.
pub fn te_row_scale(z: Complex64) -> Complex64 {
    1.0 / (1.0 + z)
}

impl OperatorFamily for HolomorphicOperatorFamily {
    fn dim(&self) -> usize {
        match self.role {
            FamilyRole::ClampedTe => 2 * self.boundary.len(),
            _ => self.boundary.len(),
        }
    }

    fn eval(&self, z: Complex64) -> Result<CMat> {
        let bd = &self.boundary;
        match self.role {
            FamilyRole::Dirichlet => {
                let mut m = assemble_double_layer(bd, &KernelFamily::helmholtz(z))?;
                add_identity(&mut m, -0.5);
                Ok(m)
            }
            FamilyRole::Neumann => {
                let mut m = assemble_adjoint_double_layer(bd, &KernelFamily::helmholtz(z))?;
                add_identity(&mut m, 0.5);
                Ok(m)
            }
            FamilyRole::ClampedTe => {
                let which = LayerSelection { single: true, adjoint: true, double: false };
                let inner = assemble_layers(bd, &KernelFamily::helmholtz(z), which)?;
                let outer = assemble_layers(bd, &KernelFamily::modified(z), which)?;
                let n = bd.len();
                let scale = te_row_scale(z);
                let mut m = CMat::zeros(2 * n, 2 * n);
                for j in 0..n {
                    for i in 0..n {
                        m[(i, j)] = inner.single[(i, j)];
                        m[(i, j + n)] = outer.single[(i, j)];
                        m[(i + n, j)] = inner.adjoint[(i, j)] * scale;
                        m[(i + n, j + n)] = outer.adjoint[(i, j)] * scale;
                    }
                    m[(j + n, j)] += 0.5 * scale;
                    m[(j + n, j + n)] -= 0.5 * scale;
                }
                Ok(m)
            }
        }
    }
}

/// Winding number of the discretised boundary around `p` (1 inside, 0 outside).
pub fn winding_number(bd: &BoundaryDiscretization, p: Point) -> i64 {
    let n = bd.len();
    let mut total = 0.0;
    for j in 0..n {
        let a = bd.points[j];
        let b = bd.points[(j + 1) % n];
        let (ax, ay) = (a[0] - p[0], a[1] - p[1]);
        let (bx, by) = (b[0] - p[0], b[1] - p[1]);
        total += (ax * by - ay * bx).atan2(ax * bx + ay * by);
    }
    (total / (2.0 * PI)).round() as i64
}

/// Probe points for the field check: `count` interior and `count` exterior.
pub fn probe_points(bd: &BoundaryDiscretization, count: usize) -> (Vec<Point>, Vec<Point>) {
    let n = bd.len();
    let c = {
        let (mut sx, mut sy, mut w) = (0.0, 0.0, 0.0);
        for j in 0..n {
            sx += bd.points[j][0] * bd.jacobians[j];
            sy += bd.points[j][1] * bd.jacobians[j];
            w += bd.jacobians[j];
        }
        [sx / w, sy / w]
    };
    let mut inner = Vec::with_capacity(count);
    let mut outer = Vec::with_capacity(count);
    for k in 0..count {
        let j = (k * n) / count + n / (4 * count);
        let x = bd.points[j % n];
        let nu = bd.normals[j % n];
        let scale = bd.jacobians.iter().sum::<f64>() * PI / n as f64 / (2.0 * PI);
        // march inward from the boundary until safely inside
        let mut inside = None;
        for f in [0.5, 0.35, 0.25, 0.15] {
            let p = [x[0] - f * scale * nu[0], x[1] - f * scale * nu[1]];
            if winding_number(bd, p) == 1 {
                inside = Some(p);
                break;
            }
        }
        inner.push(inside.unwrap_or([c[0] + 0.3 * (x[0] - c[0]), c[1] + 0.3 * (x[1] - c[1])]));
        outer.push([x[0] + 0.35 * scale * nu[0], x[1] + 0.35 * scale * nu[1]]);
    }
    (inner, outer)
}

/// Result of the off-boundary transmission check for a candidate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FieldCheck {
    /// Relative mismatch between the directly evaluated interior field and
    /// its Green reconstruction from the exterior Cauchy data.
    pub interior_mismatch: f64,
    /// Same for the exterior field.
    pub exterior_mismatch: f64,
}

impl FieldCheck {
    pub fn worst(&self) -> f64 {
        self.interior_mismatch.max(self.exterior_mismatch)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.worst() <= tol
    }
}

/// Verify a clamped-TE null vector `q = (a, b)` at `z` off the boundary.
///
/// The interior field `v = SL^H a` and exterior field `w = SL^M b` are
/// evaluated at probe points and compared with Green's representation
/// formulas driven by the other field's boundary data through
/// `v = -w`, `∂_ν v = -∂_ν w`. A vector whose fields vanish identically fails
/// the check because the mismatch is relative.
pub fn te_field_check(
    bd: &BoundaryDiscretization,
    z: Complex64,
    q: &[Complex64],
    probes: usize,
) -> Result<FieldCheck> {
    let n = bd.len();
    if q.len() != 2 * n {
        return Err(Error::Dimension(format!("null vector length {} != {}", q.len(), 2 * n)));
    }
    let (a, b) = q.split_at(n);
    let kh = KernelFamily::helmholtz(z);
    let km = KernelFamily::modified(z);
    let which = LayerSelection { single: true, adjoint: true, double: false };
    let inner = assemble_layers(bd, &kh, which)?;
    let outer = assemble_layers(bd, &km, which)?;
    let matvec = |m: &CMat, x: &[Complex64]| -> Vec<Complex64> {
        (0..n).map(|i| (0..n).map(|j| m[(i, j)] * x[j]).sum()).collect()
    };
    let v_trace = matvec(&inner.single, a);
    let mut v_flux = matvec(&inner.adjoint, a);
    v_flux.iter_mut().zip(a).for_each(|(f, x)| *f += 0.5 * x);
    let w_trace = matvec(&outer.single, b);
    let mut w_flux = matvec(&outer.adjoint, b);
    w_flux.iter_mut().zip(b).for_each(|(f, x)| *f -= 0.5 * x);

    let h = PI / bd.half() as f64;
    let (p_in, p_out) = probe_points(bd, probes);

    // potential evaluations at an off-boundary point
    let field = |kernel: &KernelFamily, p: Point, density: &[Complex64]| -> Result<Complex64> {
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let y = bd.points[j];
            let r = (p[0] - y[0]).hypot(p[1] - y[1]);
            s += kernel.value(r)? * density[j] * bd.jacobians[j];
        }
        Ok(h * s)
    };
    // ∫ (flux Φ - trace ∂_{ν(y)}Φ) ds
    let green = |kernel: &KernelFamily, p: Point, trace: &[Complex64], flux: &[Complex64]| -> Result<Complex64> {
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let y = bd.points[j];
            let d = [p[0] - y[0], p[1] - y[1]];
            let r = d[0].hypot(d[1]);
            let nu = bd.normals[j];
            // ∂_{ν(y)} Φ(p, y) = -Φ'(r) ν(y)·(p - y) / r
            let dn = -kernel.radial_derivative(r)? * (nu[0] * d[0] + nu[1] * d[1]) / r;
            s += (flux[j] * kernel.value(r)? - trace[j] * dn) * bd.jacobians[j];
        }
        Ok(h * s)
    };

    let neg = |v: &[Complex64]| -> Vec<Complex64> { v.iter().map(|x| -x).collect() };
    let (mut num, mut den) = (0.0f64, 0.0f64);
    for &p in &p_in {
        let direct = field(&kh, p, a)?;
        let rebuilt = green(&kh, p, &neg(&w_trace), &neg(&w_flux))?;
        num = num.max((direct - rebuilt).norm());
        den = den.max(direct.norm());
    }
    let interior_mismatch = if den > 0.0 { num / den } else { f64::INFINITY };
    let (mut num, mut den) = (0.0f64, 0.0f64);
    for &p in &p_out {
        let direct = field(&km, p, b)?;
        // exterior representation: w(p) = ∫ (w ∂νΦ - ∂νw Φ) ds, with w = -v
        let rebuilt = -green(&km, p, &neg(&v_trace), &neg(&v_flux))?;
        num = num.max((direct - rebuilt).norm());
        den = den.max(direct.norm());
    }
    let exterior_mismatch = if den > 0.0 { num / den } else { f64::INFINITY };
    Ok(FieldCheck { interior_mismatch, exterior_mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PlanarCurve;

    #[test]
    fn log_weights_integrate_constant() {
        // ∫_0^{2π} ln(4 sin^2(s/2)) ds = 0
        let w = log_quadrature_weights(16);
        assert!(w.iter().sum::<f64>().abs() < 1e-13);
    }

    #[test]
    fn log_weights_integrate_cosine() {
        // ∫ ln(4 sin^2((t-s)/2)) cos(m s) ds = -2π cos(m t)/m
        let half = 16;
        let w = log_quadrature_weights(half);
        let h = PI / half as f64;
        for m in 1..half {
            let got: f64 = (0..2 * half).map(|j| w[j] * (m as f64 * j as f64 * h).cos()).sum();
            assert!((got + 2.0 * PI / m as f64).abs() < 1e-12, "mode {m}");
        }
    }

    #[test]
    fn single_layer_is_symmetric_up_to_jacobians() {
        let bd = BoundaryDiscretization::new(&PlanarCurve::kite(), 32).unwrap();
        let s = assemble_single_layer(&bd, &KernelFamily::helmholtz(Complex64::new(2.0, 0.1))).unwrap();
        for i in 0..32 {
            for j in 0..32 {
                let a = s[(i, j)] / bd.jacobians[j];
                let b = s[(j, i)] / bd.jacobians[i];
                assert!((a - b).norm() < 1e-13 * (1.0 + a.norm()));
            }
        }
    }

    #[test]
    fn disk_double_layer_diagonal_is_curvature_limit() {
        let bd = BoundaryDiscretization::new(&PlanarCurve::unit_disk(), 64).unwrap();
        let d = assemble_double_layer(&bd, &KernelFamily::modified(Complex64::new(1.5, 0.0))).unwrap();
        let expect = -1.0 / (4.0 * PI) * (2.0 * PI / 64.0);
        for i in 0..64 {
            assert!((d[(i, i)] - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn kernel_domain_errors() {
        let bd = BoundaryDiscretization::new(&PlanarCurve::unit_disk(), 8).unwrap();
        assert!(assemble_single_layer(&bd, &KernelFamily::helmholtz(Complex64::new(0.0, 0.0))).is_err());
        assert!(assemble_single_layer(&bd, &KernelFamily::modified(Complex64::new(-1.0, 0.0))).is_err());
    }

    #[test]
    fn family_sizes() {
        let bd = BoundaryDiscretization::new(&PlanarCurve::peanut(), 16).unwrap();
        assert_eq!(dirichlet_family(&bd).dim(), 16);
        assert_eq!(neumann_family(&bd).dim(), 16);
        let te = clamped_te_family(&bd);
        assert_eq!(te.dim(), 32);
        let m = te.eval(Complex64::new(2.0, 0.0)).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (32, 32));
    }

    #[test]
    fn probes_are_on_the_right_side() {
        for curve in [PlanarCurve::kite(), PlanarCurve::star(), PlanarCurve::peanut()] {
            let bd = BoundaryDiscretization::new(&curve, 128).unwrap();
            let (inner, outer) = probe_points(&bd, 8);
            assert!(inner.iter().all(|p| winding_number(&bd, *p) == 1));
            assert!(outer.iter().all(|p| winding_number(&bd, *p) == 0));
        }
    }
}
