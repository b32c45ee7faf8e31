//! Analytic closed boundary curves and their Nyström discretisation.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = [f64; 2];

/// One Fourier row `n a_n b_n c_n d_n`:
/// `x1 += a_n cos nt + b_n sin nt`, `x2 += c_n cos nt + d_n sin nt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierTerm {
    pub n: u32,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveKind {
    Disk { radius: f64 },
    /// `(cos t, eps sin t)`
    Ellipse { eps: f64 },
    /// `0.25 (0.3 cos 5t + 2) (cos t, sin t)`
    Star,
    /// `0.5 sqrt(3 cos^2 t + 1) (cos t, sin t)`
    Peanut,
    /// `(0.75 cos t + 0.3 cos 2t, sin t)`
    Kite,
    Fourier { terms: Vec<FourierTerm> },
}

/// A smooth, counterclockwise, 2π-periodic closed curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarCurve {
    kind: CurveKind,
}

/// Position and first two parameter derivatives at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub x: Point,
    pub dx: Point,
    pub ddx: Point,
}

impl PlanarCurve {
    pub fn new(kind: CurveKind) -> Result<Self> {
        match &kind {
            CurveKind::Disk { radius } if !(*radius > 0.0) => {
                return Err(Error::Invalid(format!("disk radius {radius} must be positive")))
            }
            CurveKind::Ellipse { eps } if !(*eps > 0.0 && *eps <= 1.0) => {
                return Err(Error::Invalid(format!("ellipse eps {eps} must lie in (0, 1]")))
            }
            CurveKind::Fourier { terms } if terms.is_empty() => {
                return Err(Error::Invalid("fourier curve needs at least one term".into()))
            }
            _ => {}
        }
        let curve = Self { kind };
        if let CurveKind::Fourier { .. } = curve.kind {
            if curve.signed_area() <= 0.0 {
                return Err(Error::Invalid(
                    "fourier curve must be counterclockwise with positive area".into(),
                ));
            }
            if (0..512).any(|j| norm(curve.sample(j as f64 * PI / 256.0).dx) < 1e-12) {
                return Err(Error::Invalid("fourier curve has a degenerate tangent".into()));
            }
        }
        Ok(curve)
    }

    pub fn disk(radius: f64) -> Result<Self> {
        Self::new(CurveKind::Disk { radius })
    }

    pub fn unit_disk() -> Self {
        Self { kind: CurveKind::Disk { radius: 1.0 } }
    }

    pub fn ellipse(eps: f64) -> Result<Self> {
        Self::new(CurveKind::Ellipse { eps })
    }

    pub fn star() -> Self {
        Self { kind: CurveKind::Star }
    }

    pub fn peanut() -> Self {
        Self { kind: CurveKind::Peanut }
    }

    pub fn kite() -> Self {
        Self { kind: CurveKind::Kite }
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    /// Resolve a shape name: `disk`, `disk:<r>`, `ellipse:<eps>`, `star`,
    /// `peanut`, `kite` or `fourier:<file>`.
    pub fn from_name(name: &str) -> Result<Self> {
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (name, None),
        };
        let number = |a: Option<&str>| -> Result<f64> {
            a.ok_or_else(|| Error::UnknownShape(name.to_string()))?
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::UnknownShape(name.to_string()))
        };
        match (head, arg) {
            ("disk", None) => Ok(Self::unit_disk()),
            ("disk", a) => Self::disk(number(a)?),
            ("ellipse", a) => Self::ellipse(number(a)?),
            ("star", None) => Ok(Self::star()),
            ("peanut", None) => Ok(Self::peanut()),
            ("kite", None) => Ok(Self::kite()),
            ("fourier", Some(path)) => Self::from_fourier_file(path),
            _ => Err(Error::UnknownShape(name.to_string())),
        }
    }

    pub fn from_fourier_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::new(CurveKind::Fourier { terms: parse_fourier(&text)? })
    }

    /// Position and derivatives at parameter `t`.
    pub fn sample(&self, t: f64) -> CurveSample {
        let (c, s) = (t.cos(), t.sin());
        match &self.kind {
            CurveKind::Disk { radius } => {
                let r = *radius;
                CurveSample { x: [r * c, r * s], dx: [-r * s, r * c], ddx: [-r * c, -r * s] }
            }
            CurveKind::Ellipse { eps } => CurveSample {
                x: [c, eps * s],
                dx: [-s, eps * c],
                ddx: [-c, -eps * s],
            },
            CurveKind::Star => {
                let (c5, s5) = ((5.0 * t).cos(), (5.0 * t).sin());
                polar(c, s, 0.5 + 0.075 * c5, -0.375 * s5, -1.875 * c5)
            }
            CurveKind::Peanut => {
                let r = 0.5 * (3.0 * c * c + 1.0).sqrt();
                let dr = -0.375 * (2.0 * t).sin() / r;
                let ddr = (-0.75 * (2.0 * t).cos() - dr * dr) / r;
                polar(c, s, r, dr, ddr)
            }
            CurveKind::Kite => {
                let (c2, s2) = ((2.0 * t).cos(), (2.0 * t).sin());
                CurveSample {
                    x: [0.75 * c + 0.3 * c2, s],
                    dx: [-0.75 * s - 0.6 * s2, c],
                    ddx: [-0.75 * c - 1.2 * c2, -s],
                }
            }
            CurveKind::Fourier { terms } => {
                let mut out = CurveSample { x: [0.0; 2], dx: [0.0; 2], ddx: [0.0; 2] };
                for term in terms {
                    let n = term.n as f64;
                    let (cn, sn) = ((n * t).cos(), (n * t).sin());
                    out.x[0] += term.a * cn + term.b * sn;
                    out.x[1] += term.c * cn + term.d * sn;
                    out.dx[0] += n * (-term.a * sn + term.b * cn);
                    out.dx[1] += n * (-term.c * sn + term.d * cn);
                    out.ddx[0] -= n * n * (term.a * cn + term.b * sn);
                    out.ddx[1] -= n * n * (term.c * cn + term.d * sn);
                }
                out
            }
        }
    }

    pub fn point(&self, t: f64) -> Point {
        self.sample(t).x
    }

    pub fn tangent(&self, t: f64) -> Point {
        self.sample(t).dx
    }

    /// Outward unit normal `(x2', -x1') / |x'|`.
    pub fn outward_normal(&self, t: f64) -> Result<Point> {
        let dx = self.sample(t).dx;
        let speed = norm(dx);
        if !(speed > 1e-14) {
            return Err(Error::Invalid(format!("degenerate tangent at t = {t}")));
        }
        Ok([dx[1] / speed, -dx[0] / speed])
    }

    /// Signed curvature `(x1' x2'' - x2' x1'') / |x'|^3`, positive for convex
    /// counterclockwise arcs.
    pub fn curvature(&self, t: f64) -> f64 {
        let s = self.sample(t);
        (s.dx[0] * s.ddx[1] - s.dx[1] * s.ddx[0]) / norm(s.dx).powi(3)
    }

    fn signed_area_with(&self, nodes: usize, shift: f64) -> f64 {
        let h = 2.0 * PI / nodes as f64;
        let sum: f64 = (0..nodes)
            .map(|j| {
                let s = self.sample(shift + j as f64 * h);
                s.x[0] * s.dx[1] - s.x[1] * s.dx[0]
            })
            .sum();
        0.5 * h * sum
    }

    fn signed_area(&self) -> f64 {
        self.signed_area_with(256, 0.0)
    }

    /// Enclosed area from Green's theorem with the periodic trapezoid rule,
    /// doubling the node count until successive values agree.
    pub fn enclosed_area(&self) -> f64 {
        self.enclosed_area_shifted(0.0)
    }

    pub fn enclosed_area_shifted(&self, shift: f64) -> f64 {
        let mut nodes = 64;
        let mut area = self.signed_area_with(nodes, shift);
        while nodes < 1 << 16 {
            nodes *= 2;
            let next = self.signed_area_with(nodes, shift);
            let done = (next - area).abs() <= 1e-14 * next.abs().max(1.0);
            area = next;
            if done {
                break;
            }
        }
        area
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point {
        let nodes = 1024;
        let h = 2.0 * PI / nodes as f64;
        let (mut mx, mut my) = (0.0, 0.0);
        for j in 0..nodes {
            let s = self.sample(j as f64 * h);
            // int x dA = 1/2 int x1^2 x2' dt, int y dA = -1/2 int x2^2 x1' dt
            mx += 0.5 * s.x[0] * s.x[0] * s.dx[1];
            my -= 0.5 * s.x[1] * s.x[1] * s.dx[0];
        }
        let area = self.enclosed_area();
        [h * mx / area, h * my / area]
    }

    /// Largest distance between two boundary points (sampled).
    pub fn diameter(&self) -> f64 {
        let pts: Vec<Point> = (0..256).map(|j| self.point(j as f64 * PI / 128.0)).collect();
        let mut best: f64 = 0.0;
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                best = best.max(norm([p[0] - q[0], p[1] - q[1]]));
            }
        }
        best
    }
}

impl fmt::Display for PlanarCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CurveKind::Disk { radius } if *radius == 1.0 => write!(f, "disk"),
            CurveKind::Disk { radius } => write!(f, "disk:{radius}"),
            CurveKind::Ellipse { eps } => write!(f, "ellipse:{eps}"),
            CurveKind::Star => write!(f, "star"),
            CurveKind::Peanut => write!(f, "peanut"),
            CurveKind::Kite => write!(f, "kite"),
            CurveKind::Fourier { terms } => write!(f, "fourier({} terms)", terms.len()),
        }
    }
}

fn polar(c: f64, s: f64, r: f64, dr: f64, ddr: f64) -> CurveSample {
    CurveSample {
        x: [r * c, r * s],
        dx: [dr * c - r * s, dr * s + r * c],
        ddx: [ddr * c - 2.0 * dr * s - r * c, ddr * s + 2.0 * dr * c - r * s],
    }
}

pub(crate) fn norm(v: Point) -> f64 {
    v[0].hypot(v[1])
}

/// Parse whitespace-separated rows `n a_n b_n c_n d_n`; `#` starts a comment.
pub fn parse_fourier(text: &str) -> Result<Vec<FourierTerm>> {
    let mut terms = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Invalid(format!("fourier file line {}: expected `n a b c d`", lineno + 1));
        if fields.len() != 5 {
            return Err(bad());
        }
        let n = fields[0].parse::<u32>().map_err(|_| bad())?;
        let v: Vec<f64> = fields[1..]
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        terms.push(FourierTerm { n, a: v[0], b: v[1], c: v[2], d: v[3] });
    }
    Ok(terms)
}

/// Equispaced parameter nodes `t_j = j pi / m`, `j = 0..2m`, with the
/// geometric data the layer-operator assembly needs.
#[derive(Debug, Clone)]
pub struct BoundaryDiscretization {
    pub params: Vec<f64>,
    pub points: Vec<Point>,
    pub tangents: Vec<Point>,
    pub jacobians: Vec<f64>,
    pub normals: Vec<Point>,
    pub curvatures: Vec<f64>,
}

impl BoundaryDiscretization {
    /// Discretise `curve` with `nodes` (even, >= 4) points.
    pub fn new(curve: &PlanarCurve, nodes: usize) -> Result<Self> {
        if nodes < 4 || !nodes.is_multiple_of(2) {
            return Err(Error::Invalid(format!("node count {nodes} must be even and >= 4")));
        }
        let h = 2.0 * PI / nodes as f64;
        let mut bd = Self {
            params: Vec::with_capacity(nodes),
            points: Vec::with_capacity(nodes),
            tangents: Vec::with_capacity(nodes),
            jacobians: Vec::with_capacity(nodes),
            normals: Vec::with_capacity(nodes),
            curvatures: Vec::with_capacity(nodes),
        };
        for j in 0..nodes {
            let t = j as f64 * h;
            let s = curve.sample(t);
            let speed = norm(s.dx);
            bd.params.push(t);
            bd.points.push(s.x);
            bd.tangents.push(s.dx);
            bd.jacobians.push(speed);
            bd.normals.push([s.dx[1] / speed, -s.dx[0] / speed]);
            bd.curvatures.push((s.dx[0] * s.ddx[1] - s.dx[1] * s.ddx[0]) / speed.powi(3));
        }
        Ok(bd)
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    /// Half the node count (`m` in `t_j = j pi / m`).
    pub fn half(&self) -> usize {
        self.params.len() / 2
    }
}
