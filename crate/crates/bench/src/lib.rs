//! Benchmarks live in `benches/`; this library only hosts shared fixtures.

use clampte_core::geometry::{BoundaryDiscretization, PlanarCurve};

/// Discretised kite boundary, the least symmetric shipped shape.
pub fn kite(nodes: usize) -> BoundaryDiscretization {
    BoundaryDiscretization::new(&PlanarCurve::kite(), nodes).expect("valid node count")
}
