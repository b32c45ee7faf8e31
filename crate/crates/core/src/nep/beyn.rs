//! Two-moment contour-integral eigensolver for holomorphic matrix families.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::linalg::{dense_eig, dense_svd, CMat, LuFactor};
use crate::bie::OperatorFamily;
use crate::error::{Error, Result};

/// Elliptical contour `z(θ) = c + a cos θ + i b sin θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub center: Complex64,
    pub radius_real: f64,
    pub radius_imag: f64,
    pub quadrature_points: usize,
    pub subspace_dim: usize,
}

impl ContourSpec {
    pub const DEFAULT_POINTS: usize = 32;
    pub const DEFAULT_SUBSPACE: usize = 8;

    pub fn new(center: Complex64, radius_real: f64, radius_imag: f64) -> Result<Self> {
        let spec = Self {
            center,
            radius_real,
            radius_imag,
            quadrature_points: Self::DEFAULT_POINTS,
            subspace_dim: Self::DEFAULT_SUBSPACE,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        Self::new(center, radius, radius)
    }

    pub fn with_points(mut self, n: usize) -> Result<Self> {
        self.quadrature_points = n;
        self.validate()?;
        Ok(self)
    }

    pub fn with_subspace(mut self, l: usize) -> Result<Self> {
        self.subspace_dim = l;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Contour(m));
        if !(self.radius_real > 0.0 && self.radius_imag > 0.0)
            || !self.radius_real.is_finite()
            || !self.radius_imag.is_finite()
        {
            return bad(format!("semi-axes must be positive, got {} and {}", self.radius_real, self.radius_imag));
        }
        if self.quadrature_points < 4 || !self.quadrature_points.is_multiple_of(2) {
            return bad(format!("quadrature point count must be even and >= 4, got {}", self.quadrature_points));
        }
        if self.subspace_dim == 0 {
            return bad("subspace dimension must be positive".into());
        }
        // The closed region meets the real axis on an interval; it must lie
        // in (0, inf).
        let q = self.center.im / self.radius_imag;
        if q.abs() < 1.0 {
            let left = self.center.re - self.radius_real * (1.0 - q * q).sqrt();
            if left <= 0.0 {
                return bad(format!("contour around {} reaches the branch cut (-inf, 0]", self.center));
            }
        }
        Ok(())
    }

    /// Strict interior test.
    pub fn contains(&self, z: Complex64) -> bool {
        let d = z - self.center;
        (d.re / self.radius_real).powi(2) + (d.im / self.radius_imag).powi(2) < 1.0
    }

    /// Node `j` of the trapezoid rule shifted by `offset` (in units of the
    /// node spacing), with its quadrature weight `z'(θ_j)/(N i)`.
    fn node(&self, j: usize, offset: f64) -> (Complex64, Complex64) {
        let n = self.quadrature_points as f64;
        let theta = 2.0 * PI * (j as f64 + offset) / n;
        let (s, c) = theta.sin_cos();
        let z = self.center + Complex64::new(self.radius_real * c, self.radius_imag * s);
        let dz = Complex64::new(-self.radius_real * s, self.radius_imag * c);
        (z, dz / Complex64::new(0.0, n))
    }
}

/// One eigenvalue reported by the solver.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenResult {
    /// Eigenvalue, with the imaginary part zeroed when within the realness
    /// tolerance.
    pub eigenvalue: Complex64,
    /// Eigenvalue as extracted, before snapping.
    pub raw: Complex64,
    /// `‖T(λ)q‖₂ / ‖q‖₂` for the stored eigenvector.
    pub residual: f64,
    pub multiplicity: usize,
    pub contour: usize,
    #[serde(skip)]
    pub eigenvector: Vec<Complex64>,
}

/// Whether `z` is real to the tolerance `1e-6 (1 + |Re z|)`.
pub fn is_effectively_real(z: Complex64) -> bool {
    z.im.abs() <= 1e-6 * (1.0 + z.re.abs())
}

/// Solver knobs beyond the contour itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeynOptions {
    /// Relative singular-value threshold for the rank of the zeroth moment.
    pub rank_tol: f64,
    /// Eigenpairs with a larger residual are discarded.
    pub residual_tol: f64,
    /// Seed of the probe-matrix stream.
    pub seed: u64,
    /// Nonlinear inverse-iteration steps applied to each extracted pair.
    pub refine_steps: usize,
    /// Eigenvalues closer than this are merged into one result.
    pub cluster_tol: f64,
}

impl Default for BeynOptions {
    fn default() -> Self {
        Self { rank_tol: 1e-8, residual_tol: 1e-6, seed: 0x5eed, refine_steps: 3, cluster_tol: 1e-6 }
    }
}

/// Everything the solver learned about one contour.
#[derive(Debug, Clone)]
pub struct BeynOutcome {
    pub results: Vec<EigenResult>,
    /// Singular values of the zeroth moment.
    pub singular_values: Vec<f64>,
    pub rank: usize,
    /// `(1/N) Σ |z'(θ_j)| ‖T(z_j)⁻¹V̂‖_F`, the size a non-cancelling integral
    /// would have.
    pub scale: f64,
    /// Frobenius norm of the zeroth moment.
    pub a0_norm: f64,
    /// Subspace dimension finally used.
    pub subspace_dim: usize,
    /// Candidates inside the contour discarded for their residual.
    pub discarded: usize,
}

/// All eigenvalues of `family` inside `contour`, default options except for
/// the rank threshold.
pub fn beyn_solve<F: OperatorFamily + ?Sized>(
    family: &F,
    contour: &ContourSpec,
    rank_tol: f64,
) -> Result<Vec<EigenResult>> {
    let options = BeynOptions { rank_tol, ..BeynOptions::default() };
    Ok(beyn_run(family, contour, &options, 0)?.results)
}

fn probe_matrix(rows: usize, cols: usize, seed: u64) -> CMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = CMat::zeros(rows, cols);
    // column-major fill so that widening keeps the leading columns
    for j in 0..cols {
        for i in 0..rows {
            v[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    v
}

struct Moments {
    a0: CMat,
    a1: CMat,
    scale: f64,
}

fn moments<F: OperatorFamily + ?Sized>(
    family: &F,
    contour: &ContourSpec,
    probe: &CMat,
) -> Result<Moments> {
    let dim = family.dim();
    let cols = probe.ncols();
    let mut last_err = None;
    for attempt in 0..4 {
        let offset = [0.0, 0.5, 0.25, 0.75][attempt];
        let mut a0 = CMat::zeros(dim, cols);
        let mut a1 = CMat::zeros(dim, cols);
        let mut scale = 0.0;
        let mut failed = false;
        for j in 0..contour.quadrature_points {
            let (z, w) = contour.node(j, offset);
            let t = family.eval(z)?;
            let lu = match LuFactor::new(&t) {
                Ok(lu) => lu,
                Err(e @ Error::Singular { .. }) => {
                    last_err = Some(e);
                    failed = true;
                    break;
                }
                Err(e) => return Err(e),
            };
            let x = lu.solve(probe)?;
            scale += w.norm() * x.norm_l2();
            let wz = w * z;
            for c in 0..cols {
                for r in 0..dim {
                    let v = x[(r, c)];
                    a0[(r, c)] += w * v;
                    a1[(r, c)] += wz * v;
                }
            }
        }
        if !failed {
            return Ok(Moments { a0, a1, scale });
        }
    }
    Err(last_err.unwrap_or(Error::Singular { pivot: 0 }))
}

fn residual<F: OperatorFamily + ?Sized>(family: &F, z: Complex64, q: &[Complex64]) -> Result<f64> {
    let t = family.eval(z)?;
    let n = q.len();
    let qn = q.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let mut r2 = 0.0;
    for i in 0..n {
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..n {
            s += t[(i, j)] * q[j];
        }
        r2 += s.norm_sqr();
    }
    Ok(r2.sqrt() / qn)
}

/// Nonlinear inverse iteration: `x = T(λ)⁻¹T'(λ)q`, `λ ← λ − (qᴴq)/(qᴴx)`.
fn refine<F: OperatorFamily + ?Sized>(
    family: &F,
    mut lambda: Complex64,
    mut q: Vec<Complex64>,
    steps: usize,
) -> (Complex64, Vec<Complex64>) {
    let n = q.len();
    for _ in 0..steps {
        let h = 1e-5 * (1.0 + lambda.norm());
        let (tp, tm, t0) = match (family.eval(lambda + h), family.eval(lambda - h), family.eval(lambda)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => break,
        };
        let lu = match LuFactor::new(&t0) {
            Ok(lu) => lu,
            // exactly singular: already converged
            Err(_) => break,
        };
        let mut tq = CMat::zeros(n, 1);
        for i in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                s += (tp[(i, j)] - tm[(i, j)]) * q[j];
            }
            tq[(i, 0)] = s / (2.0 * h);
        }
        let Ok(x) = lu.solve(&tq) else { break };
        let qq: Complex64 = q.iter().map(|v| v.norm_sqr()).sum::<f64>().into();
        let qx: Complex64 = (0..n).map(|i| q[i].conj() * x[(i, 0)]).sum();
        if qx.norm() == 0.0 || !qx.is_finite() {
            break;
        }
        let step = qq / qx;
        lambda -= step;
        let xn = (0..n).map(|i| x[(i, 0)].norm_sqr()).sum::<f64>().sqrt();
        q = (0..n).map(|i| x[(i, 0)] / xn).collect();
        if step.norm() <= 1e-14 * (1.0 + lambda.norm()) {
            break;
        }
    }
    (lambda, q)
}

/// Full solver run on one contour, tagging results with `contour_id`.
pub fn beyn_run<F: OperatorFamily + ?Sized>(
    family: &F,
    contour: &ContourSpec,
    options: &BeynOptions,
    contour_id: usize,
) -> Result<BeynOutcome> {
    contour.validate()?;
    let dim = family.dim();
    if dim == 0 {
        return Err(Error::Dimension("empty operator family".into()));
    }
    let mut l = contour.subspace_dim.min(dim);
    let mut doublings = 0;
    let (m, svd, rank) = loop {
        let probe = probe_matrix(dim, l, options.seed);
        let m = moments(family, contour, &probe)?;
        let svd = dense_svd(&m.a0)?;
        let s1 = svd.sigma.first().copied().unwrap_or(0.0);
        let rank = if s1 > options.rank_tol * m.scale {
            svd.sigma.iter().filter(|&&s| s > options.rank_tol * s1).count()
        } else {
            0
        };
        if rank < l || l == dim {
            break (m, svd, rank);
        }
        if doublings == 3 {
            return Err(Error::RankOverflow { dim: l, doublings });
        }
        doublings += 1;
        l = (2 * l).min(dim);
    };

    let mut outcome = BeynOutcome {
        results: Vec::new(),
        singular_values: svd.sigma.clone(),
        rank,
        scale: m.scale,
        a0_norm: m.a0.norm_l2(),
        subspace_dim: l,
        discarded: 0,
    };
    if rank == 0 {
        return Ok(outcome);
    }

    // B = V0ᴴ A1 W0 Σ0⁻¹
    let v0 = svd.u.subcols(0, rank).to_owned();
    let w0 = svd.v.subcols(0, rank).to_owned();
    let mut rhs = &m.a1 * &w0;
    for j in 0..rank {
        let inv = 1.0 / svd.sigma[j];
        for i in 0..dim {
            rhs[(i, j)] *= inv;
        }
    }
    let b = v0.adjoint() * &rhs;
    let (vals, vecs) = dense_eig(&b)?;
    let q_all = &v0 * &vecs;

    let mut found = Vec::new();
    for (k, &lambda0) in vals.iter().enumerate() {
        if !contour.contains(lambda0) || !lambda0.is_finite() {
            continue;
        }
        let q0: Vec<Complex64> = (0..dim).map(|i| q_all[(i, k)]).collect();
        // Refinement must not jump to a neighbouring eigenvalue.
        let gap = vals
            .iter()
            .enumerate()
            .filter(|&(i, v)| i != k && (v - lambda0).norm() > options.cluster_tol)
            .map(|(_, v)| (v - lambda0).norm())
            .fold(f64::INFINITY, f64::min);
        let (mut lambda, mut q) = refine(family, lambda0, q0.clone(), options.refine_steps);
        if (lambda - lambda0).norm() > 0.5 * gap {
            lambda = lambda0;
            q = q0;
        }
        if !contour.contains(lambda) {
            continue;
        }
        let res = residual(family, lambda, &q)?;
        if !(res <= options.residual_tol) {
            outcome.discarded += 1;
            continue;
        }
        found.push(EigenResult {
            eigenvalue: if is_effectively_real(lambda) { Complex64::new(lambda.re, 0.0) } else { lambda },
            raw: lambda,
            residual: res,
            multiplicity: 1,
            contour: contour_id,
            eigenvector: q,
        });
    }
    outcome.results = cluster(found, options.cluster_tol);
    Ok(outcome)
}

/// Merge results whose eigenvalues agree to `tol`, adding multiplicities.
pub fn cluster(mut items: Vec<EigenResult>, tol: f64) -> Vec<EigenResult> {
    items.sort_by(|a, b| a.eigenvalue.re.total_cmp(&b.eigenvalue.re).then(a.eigenvalue.im.total_cmp(&b.eigenvalue.im)));
    let mut out: Vec<EigenResult> = Vec::new();
    for it in items {
        if let Some(last) = out.last_mut() {
            if (last.eigenvalue - it.eigenvalue).norm() <= tol {
                let (m1, m2) = (last.multiplicity as f64, it.multiplicity as f64);
                last.raw = (last.raw * m1 + it.raw * m2) / (m1 + m2);
                last.eigenvalue = if is_effectively_real(last.raw) {
                    Complex64::new(last.raw.re, 0.0)
                } else {
                    last.raw
                };
                last.multiplicity += it.multiplicity;
                if it.residual > last.residual {
                    last.residual = it.residual;
                }
                continue;
            }
        }
        out.push(it);
    }
    out
}
