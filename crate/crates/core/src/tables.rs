//! Published reference values and the comparisons run against them.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::PlanarCurve;
use crate::oracle::ellipse_lambda1;
use crate::report::{compute_spectrum, SolverParams, SpectrumKind};

/// Five listed values of one spectrum on one shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub shape: &'static str,
    pub kind: SpectrumKind,
    pub values: [f64; 5],
}

const fn row(shape: &'static str, kind: SpectrumKind, values: [f64; 5]) -> ReferenceRow {
    ReferenceRow { shape, kind, values }
}

pub const DISK_ROWS: [ReferenceRow; 3] = [
    row("disk", SpectrumKind::Ne, [0.0, 1.84119, 1.84119, 3.05424, 3.05424]),
    row("disk", SpectrumKind::Te, [1.61464, 3.05164, 3.05164, 4.36453, 4.36453]),
    row("disk", SpectrumKind::De, [2.40483, 3.83171, 3.83171, 5.13563, 5.13562]),
];

pub const SHAPE_ROWS: [ReferenceRow; 9] = [
    row("star", SpectrumKind::Ne, [0.0, 3.51176, 3.51176, 5.32657, 5.32657]),
    row("star", SpectrumKind::Te, [3.26716, 6.18638, 6.18638, 8.70290, 8.70290]),
    row("star", SpectrumKind::De, [5.06979, 8.00314, 8.00314, 10.45544, 10.45544]),
    row("peanut", SpectrumKind::Ne, [0.0, 1.72126, 3.02611, 3.45854, 3.66118]),
    row("peanut", SpectrumKind::Te, [2.13093, 3.41900, 4.70289, 4.89266, 5.55246]),
    row("peanut", SpectrumKind::De, [3.36058, 4.38535, 5.79406, 6.08287, 6.68797]),
    row("kite", SpectrumKind::Ne, [0.0, 1.77091, 2.18272, 3.39190, 3.52298]),
    row("kite", SpectrumKind::Te, [1.91665, 3.38373, 3.75151, 4.96416, 5.03581]),
    row("kite", SpectrumKind::De, [2.95502, 4.37204, 4.78839, 6.03903, 6.66370]),
];

/// `(ε, k₁, √λ₁)` for the ellipses `(cos t, ε sin t)`.
pub const ELLIPSE_ROWS: [(f64, f64, f64); 5] = [
    (0.5, 2.40418, 3.75645),
    (0.6, 2.14377, 3.26214),
    (0.7, 1.95646, 2.91875),
    (0.8, 1.81492, 2.66990),
    (1.0, 1.61464, 2.40483),
];

/// Listed enclosed areas.
pub const AREAS: [(&str, f64); 3] = [("kite", 2.356), ("peanut", 1.963), ("star", 0.758)];

/// Tolerances: method-exact disk values, and everything computed on other
/// boundaries.
pub const DISK_TOL: f64 = 1e-4;
pub const SHAPE_TOL: f64 = 2e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub label: String,
    pub computed: f64,
    pub reference: f64,
    pub diff: f64,
    pub ok: bool,
}

/// Entry-by-entry comparison of two lists.
pub fn compare_positional(label: &str, computed: &[f64], reference: &[f64], tol: f64) -> Vec<Comparison> {
    reference
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let c = computed.get(i).copied().unwrap_or(f64::NAN);
            let diff = (c - r).abs();
            Comparison { label: format!("{label}[{}]", i + 1), computed: c, reference: r, diff, ok: diff <= tol }
        })
        .collect()
}

/// For each reference value, the nearest computed value.
pub fn compare_nearest(label: &str, computed: &[f64], reference: &[f64], tol: f64) -> Vec<Comparison> {
    reference
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let c = computed
                .iter()
                .copied()
                .min_by(|a, b| (a - r).abs().total_cmp(&(b - r).abs()))
                .unwrap_or(f64::NAN);
            let diff = (c - r).abs();
            Comparison { label: format!("{label}[{}]", i + 1), computed: c, reference: r, diff, ok: diff <= tol }
        })
        .collect()
}

pub fn format_comparisons(rows: &[Comparison]) -> String {
    let mut out = String::new();
    for c in rows {
        out.push_str(&format!(
            "{:<14} computed {:>12.6} reference {:>10.5} diff {:.2e} {}\n",
            c.label,
            c.computed,
            c.reference,
            c.diff,
            if c.ok { "ok" } else { "MISMATCH" }
        ));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseRow {
    pub eps: f64,
    pub k1: f64,
    pub sqrt_lambda1: f64,
    pub reference_k1: f64,
    pub reference_sqrt_lambda1: f64,
    /// `k₁ < √λ₁` strictly.
    pub bound_ok: bool,
}

pub fn ellipse_table(params: &SolverParams) -> Result<Vec<EllipseRow>> {
    ELLIPSE_ROWS
        .iter()
        .map(|&(eps, rk, rl)| {
            let curve = PlanarCurve::ellipse(eps)?;
            let k1 = compute_spectrum(&curve, SpectrumKind::Te, 1, params)?.values()[0];
            let sqrt_lambda1 = ellipse_lambda1(eps)?.sqrt();
            Ok(EllipseRow {
                eps,
                k1,
                sqrt_lambda1,
                reference_k1: rk,
                reference_sqrt_lambda1: rl,
                bound_ok: k1 < sqrt_lambda1,
            })
        })
        .collect()
}

pub fn format_ellipse_table(rows: &[EllipseRow]) -> String {
    let mut out = String::from("eps    k1          ref k1    diff      sqrt(l1)    ref       diff      k1<sqrt(l1)\n");
    for r in rows {
        out.push_str(&format!(
            "{:<6} {:<11.6} {:<9.5} {:<9.2e} {:<11.6} {:<9.5} {:<9.2e} {}\n",
            r.eps,
            r.k1,
            r.reference_k1,
            (r.k1 - r.reference_k1).abs(),
            r.sqrt_lambda1,
            r.reference_sqrt_lambda1,
            (r.sqrt_lambda1 - r.reference_sqrt_lambda1).abs(),
            r.bound_ok
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeArea {
    pub shape: String,
    pub area: f64,
    pub reference: f64,
    pub k1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monotonicity {
    pub shapes: Vec<ShapeArea>,
    /// `k₁(kite) ≤ k₁(peanut) ≤ k₁(star)`.
    pub ordering_ok: bool,
}

pub fn monotonicity(params: &SolverParams) -> Result<Monotonicity> {
    let shapes = AREAS
        .iter()
        .map(|&(name, reference)| {
            let curve = PlanarCurve::from_name(name)?;
            let k1 = compute_spectrum(&curve, SpectrumKind::Te, 1, params)?.values()[0];
            Ok(ShapeArea { shape: name.to_string(), area: curve.enclosed_area(), reference, k1 })
        })
        .collect::<Result<Vec<_>>>()?;
    let ordering_ok = shapes.windows(2).all(|w| w[0].k1 <= w[1].k1);
    Ok(Monotonicity { shapes, ordering_ok })
}

pub fn format_monotonicity(m: &Monotonicity) -> String {
    let mut out = String::from("shape    area      ref area  diff      k1\n");
    for s in &m.shapes {
        out.push_str(&format!(
            "{:<8} {:<9.5} {:<9.3} {:<9.2e} {:.6}\n",
            s.shape,
            s.area,
            s.reference,
            (s.area - s.reference).abs(),
            s.k1
        ));
    }
    out.push_str(&format!("k1(kite) <= k1(peanut) <= k1(star): {}\n", m.ordering_ok));
    out
}
