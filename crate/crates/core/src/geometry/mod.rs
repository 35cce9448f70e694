//! Geometry of two-qubit pure states: the Hopf fibration S³ → S⁷ → S⁴,
//! concurrence, the Mannoury-Fubini-Study metric on the base and a numeric
//! scalar-curvature engine used to check closed-form curvature results.

mod hopf;
mod mfs;
mod tensor;

pub use hopf::{hopf_base, hopf_fiber, ChartAngle, FiberQuaternion, HopfBase};
pub use mfs::{mfs_metric, ChartConvention, ChartPoint, MfsField};
pub use tensor::{christoffel, scalar_curvature_numeric, Christoffel, FnMetric, MetricField, DEFAULT_STEP};

use crate::error::{Error, Result};
use crate::simulator::Statevector;

/// Pure-state concurrence `2|αδ − βγ|`.
pub fn concurrence(state: &Statevector) -> f64 {
    let det = state.alpha() * state.delta() - state.beta() * state.gamma();
    (2.0 * det.norm()).min(1.0)
}

/// Scalar curvature of the base metric as a function of concurrence,
/// `2(6C² − 5)/(C² − 1)`.
pub fn ricci_closed(c: f64) -> Result<f64> {
    if !c.is_finite() || c.abs() >= 1.0 {
        return Err(Error::CurvatureSingularity { concurrence: c });
    }
    let c2 = c * c;
    Ok(2.0 * (6.0 * c2 - 5.0) / (c2 - 1.0))
}
