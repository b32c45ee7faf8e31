//! Spectra of a named shape and the report built from them.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bie::{clamped_te_family, dirichlet_family, neumann_family, te_field_check};
use crate::error::{Error, Result};
use crate::geometry::{BoundaryDiscretization, PlanarCurve};
use crate::nep::{sweep, BeynOptions, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    /// Dirichlet Laplacian, reported as `√λ_j`.
    De,
    /// Neumann Laplacian, reported as `√μ_j`.
    Ne,
    /// Clamped transmission, reported as `k_j`.
    Te,
}

impl SpectrumKind {
    pub const ALL: [SpectrumKind; 3] = [SpectrumKind::De, SpectrumKind::Ne, SpectrumKind::Te];

    pub fn label(self) -> &'static str {
        match self {
            SpectrumKind::De => "de",
            SpectrumKind::Ne => "ne",
            SpectrumKind::Te => "te",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "de" => Ok(SpectrumKind::De),
            "ne" => Ok(SpectrumKind::Ne),
            "te" => Ok(SpectrumKind::Te),
            _ => Err(Error::Invalid(format!("unknown spectrum type {s:?} (expected de, ne or te)"))),
        }
    }
}

/// Discretisation and solver settings for one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    pub nodes: usize,
    /// Search ceiling for the contour sweep.
    pub kmax: f64,
    pub contour_height: f64,
    pub contour_half_width: f64,
    pub contour_overlap: f64,
    pub z_lo: f64,
    pub quadrature_points: usize,
    pub subspace_dim: usize,
    pub rank_tol: f64,
    pub seed: u64,
    /// Off-boundary probes per side for the transmission field check.
    pub probe_count: usize,
    pub probe_tol: f64,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            nodes: 128,
            kmax: 20.0,
            contour_height: 0.25,
            contour_half_width: 1.0,
            contour_overlap: 0.25,
            z_lo: 0.1,
            quadrature_points: 32,
            subspace_dim: 8,
            rank_tol: 1e-8,
            seed: 20240601,
            probe_count: 8,
            probe_tol: 1e-4,
        }
    }
}

impl SolverParams {
    fn options(&self) -> BeynOptions {
        BeynOptions { rank_tol: self.rank_tol, seed: self.seed, ..BeynOptions::default() }
    }

    fn sweep_spec(&self, count: usize) -> SweepSpec {
        SweepSpec {
            z_lo: self.z_lo,
            kmax: self.kmax,
            half_width: self.contour_half_width,
            half_height: self.contour_height,
            overlap: self.contour_overlap,
            count,
            quadrature_points: self.quadrature_points,
            subspace_dim: self.subspace_dim,
        }
    }
}

/// One listed value; eigenvalues of multiplicity `m` appear `m` times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    /// 1-based position in the list.
    pub index: usize,
    pub value: f64,
    /// Imaginary part before snapping to the real axis.
    pub raw_imag: f64,
    pub residual: f64,
    pub multiplicity: usize,
}

/// A solver candidate that failed the transmission field check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectedValue {
    pub value: f64,
    pub raw_imag: f64,
    pub residual: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub kind: SpectrumKind,
    pub entries: Vec<SpectrumEntry>,
    pub rejected: Vec<RejectedValue>,
    pub contours: usize,
}

impl Spectrum {
    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }
}

/// First `count` values (with multiplicity) of `kind` on `curve`.
pub fn compute_spectrum(
    curve: &PlanarCurve,
    kind: SpectrumKind,
    count: usize,
    params: &SolverParams,
) -> Result<Spectrum> {
    let bd = BoundaryDiscretization::new(curve, params.nodes)?;
    let mut entries = Vec::new();
    let mut wanted = count;
    if kind == SpectrumKind::Ne && count > 0 {
        // constants: μ₁ = 0, outside every admissible contour
        entries.push(SpectrumEntry { index: 1, value: 0.0, raw_imag: 0.0, residual: 0.0, multiplicity: 1 });
        wanted -= 1;
    }
    if wanted == 0 {
        return Ok(Spectrum { kind, entries, rejected: Vec::new(), contours: 0 });
    }
    let spec = params.sweep_spec(wanted);
    let options = params.options();
    let outcome = match kind {
        SpectrumKind::De => sweep(&dirichlet_family(&bd), &spec, &options, |_| Ok(None))?,
        SpectrumKind::Ne => sweep(&neumann_family(&bd), &spec, &options, |_| Ok(None))?,
        SpectrumKind::Te => sweep(&clamped_te_family(&bd), &spec, &options, |r| {
            let check = te_field_check(&bd, r.raw, &r.eigenvector, params.probe_count)?;
            Ok(if check.passes(params.probe_tol) {
                None
            } else {
                Some(format!(
                    "field check mismatch {:.3e} (interior {:.3e}, exterior {:.3e})",
                    check.worst(),
                    check.interior_mismatch,
                    check.exterior_mismatch
                ))
            })
        })?,
    };
    'outer: for r in &outcome.accepted {
        for _ in 0..r.multiplicity {
            if entries.len() == count {
                break 'outer;
            }
            entries.push(SpectrumEntry {
                index: entries.len() + 1,
                value: r.eigenvalue.re,
                raw_imag: r.raw.im,
                residual: r.residual,
                multiplicity: r.multiplicity,
            });
        }
    }
    let rejected = outcome
        .rejected
        .iter()
        .map(|r| RejectedValue {
            value: r.candidate.eigenvalue.re,
            raw_imag: r.candidate.raw.im,
            residual: r.candidate.residual,
            reason: r.reason.clone(),
        })
        .collect();
    Ok(Spectrum { kind, entries, rejected, contours: outcome.contours })
}

/// `μ_j ≤ k_j² ≤ λ_j` for one index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterlaceCheck {
    pub j: usize,
    pub mu: f64,
    pub k_squared: f64,
    pub lambda: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    /// `k₁² ≤ λ₁`, when both lists are present.
    pub upperbound_ok: Option<bool>,
    pub interlacing: Vec<InterlaceCheck>,
}

impl Verdicts {
    pub fn interlacing_ok(&self) -> bool {
        self.interlacing.iter().all(|c| c.ok)
    }
}

pub fn interlace(ne: &[f64], te: &[f64], de: &[f64]) -> Vec<InterlaceCheck> {
    let n = ne.len().min(te.len()).min(de.len());
    (0..n)
        .map(|i| {
            let (mu, k2, lambda) = (ne[i] * ne[i], te[i] * te[i], de[i] * de[i]);
            InterlaceCheck { j: i + 1, mu, k_squared: k2, lambda, ok: mu <= k2 && k2 <= lambda }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub shape: String,
    pub nodes: usize,
    pub params: SolverParams,
    pub area: f64,
    pub de: Option<Spectrum>,
    pub ne: Option<Spectrum>,
    pub te: Option<Spectrum>,
    pub verdicts: Verdicts,
}

impl SpectrumReport {
    pub fn build(
        shape: &str,
        curve: &PlanarCurve,
        kinds: &[SpectrumKind],
        count: usize,
        params: &SolverParams,
    ) -> Result<Self> {
        let mut report = SpectrumReport {
            shape: shape.to_string(),
            nodes: params.nodes,
            params: *params,
            area: curve.enclosed_area(),
            de: None,
            ne: None,
            te: None,
            verdicts: Verdicts { upperbound_ok: None, interlacing: Vec::new() },
        };
        for &kind in SpectrumKind::ALL.iter().filter(|k| kinds.contains(k)) {
            let s = compute_spectrum(curve, kind, count, params)?;
            match kind {
                SpectrumKind::De => report.de = Some(s),
                SpectrumKind::Ne => report.ne = Some(s),
                SpectrumKind::Te => report.te = Some(s),
            }
        }
        report.verdicts = report.verdicts();
        Ok(report)
    }

    /// Verdicts from the listed values.
    pub fn verdicts(&self) -> Verdicts {
        let vals = |s: &Option<Spectrum>| s.as_ref().map(|s| s.values());
        let (de, ne, te) = (vals(&self.de), vals(&self.ne), vals(&self.te));
        let upperbound_ok = match (&te, &de) {
            (Some(t), Some(d)) if !t.is_empty() && !d.is_empty() => Some(t[0] * t[0] <= d[0] * d[0]),
            _ => None,
        };
        let interlacing = match (&ne, &te, &de) {
            (Some(n), Some(t), Some(d)) => interlace(n, t, d),
            _ => Vec::new(),
        };
        Verdicts { upperbound_ok, interlacing }
    }

    pub fn spectra(&self) -> impl Iterator<Item = &Spectrum> {
        [&self.de, &self.ne, &self.te].into_iter().flatten()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("shape,type,index,value,residual,multiplicity\n");
        for s in self.spectra() {
            for e in &s.entries {
                let _ = writeln!(
                    out,
                    "{},{},{},{:.10},{:.3e},{}",
                    self.shape,
                    s.kind.label(),
                    e.index,
                    e.value,
                    e.residual,
                    e.multiplicity
                );
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Invalid(format!("JSON encoding failed: {e}")))
    }
}
