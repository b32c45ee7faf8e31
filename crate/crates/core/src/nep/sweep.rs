//! Covering `(z_lo, kmax]` with overlapping elliptical contours to collect
//! the first few real eigenvalues of a family.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::beyn::{beyn_run, cluster, BeynOptions, ContourSpec, EigenResult};
use crate::bie::OperatorFamily;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Left end of the searched interval; must be positive.
    pub z_lo: f64,
    /// Search ceiling.
    pub kmax: f64,
    pub half_width: f64,
    pub half_height: f64,
    /// Overlap of consecutive contours along the real axis.
    pub overlap: f64,
    /// Number of eigenvalues wanted, counted with multiplicity.
    pub count: usize,
    pub quadrature_points: usize,
    pub subspace_dim: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            z_lo: 0.1,
            kmax: 20.0,
            half_width: 1.0,
            half_height: 0.25,
            overlap: 0.25,
            count: 5,
            quadrature_points: ContourSpec::DEFAULT_POINTS,
            subspace_dim: ContourSpec::DEFAULT_SUBSPACE,
        }
    }
}

/// A candidate discarded by the caller-supplied check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Rejected {
    pub candidate: EigenResult,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    /// Accepted eigenvalues in increasing order of real part.
    pub accepted: Vec<EigenResult>,
    pub rejected: Vec<Rejected>,
    pub contours: usize,
}

impl SweepOutcome {
    /// Accepted values expanded by multiplicity, truncated to `count`.
    pub fn values(&self, count: usize) -> Vec<f64> {
        self.accepted
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.eigenvalue.re, r.multiplicity))
            .take(count)
            .collect()
    }
}

/// Verdict of a candidate check: `None` accepts, `Some(reason)` rejects.
pub type Verdict = Option<String>;

/// Core interval of contour `m`: values are attributed to exactly one contour.
fn core(spec: &SweepSpec, m: usize) -> (f64, f64, f64) {
    let step = 2.0 * spec.half_width - spec.overlap;
    let reach = spec.half_width - 0.5 * spec.overlap;
    let c0 = spec.z_lo + spec.half_width;
    let c = c0 + step * m as f64;
    let lo = if m == 0 { spec.z_lo } else { c - reach };
    (c, lo, c + reach)
}

/// Sweep contours left to right until `spec.count` eigenvalues (with
/// multiplicity) below the current core's right end are accepted.
pub fn sweep<F, C>(family: &F, spec: &SweepSpec, options: &BeynOptions, mut check: C) -> Result<SweepOutcome>
where
    F: OperatorFamily + ?Sized,
    C: FnMut(&EigenResult) -> Result<Verdict>,
{
    if !(spec.z_lo > 0.0) || !(spec.kmax > spec.z_lo) {
        return Err(Error::Invalid(format!("bad sweep interval ({}, {}]", spec.z_lo, spec.kmax)));
    }
    if !(spec.overlap >= 0.0 && spec.overlap < spec.half_width) {
        return Err(Error::Invalid(format!("overlap {} must lie in [0, half width)", spec.overlap)));
    }
    let mut out = SweepOutcome::default();
    let mut found: Vec<EigenResult> = Vec::new();
    for m in 0.. {
        let (c, lo, hi) = core(spec, m);
        if lo >= spec.kmax {
            let have = found.iter().map(|r| r.multiplicity).sum();
            return Err(Error::ScanCeiling { kmax: spec.kmax, found: have, wanted: spec.count });
        }
        let contour = ContourSpec {
            center: Complex64::new(c, 0.0),
            radius_real: spec.half_width,
            radius_imag: spec.half_height,
            quadrature_points: spec.quadrature_points,
            subspace_dim: spec.subspace_dim,
        };
        let res = beyn_run(family, &contour, options, m)?;
        out.contours += 1;
        for r in res.results {
            let x = r.eigenvalue.re;
            if x < lo || x >= hi || x > spec.kmax {
                continue;
            }
            match check(&r)? {
                None => found.push(r),
                Some(reason) => out.rejected.push(Rejected { candidate: r, reason }),
            }
        }
        found = cluster(found, options.cluster_tol);
        let have: usize = found.iter().map(|r| r.multiplicity).sum();
        if have >= spec.count {
            break;
        }
    }
    out.accepted = found;
    Ok(out)
}
