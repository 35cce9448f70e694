//! The Mannoury-Fubini-Study metric on the S⁴ base in the chart
//! `(C, χ, Φ, Θ)` with `w = |C|e^{iχ}`.

use nalgebra::{DMatrix, Matrix4};
use serde::Serialize;

use crate::error::{Error, Result};

use super::tensor::MetricField;

/// Placement of the `sin²Θ` factor in the `(Φ, Θ)` block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ChartConvention {
    /// `(1 − C²)(dΦ² + sin²Θ dΘ²)`, as the line element is printed.
    #[default]
    A,
    /// `(1 − C²)(sin²Θ dΦ² + dΘ²)`, the usual round-sphere placement.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub c: f64,
    pub chi: f64,
    pub phi: f64,
    pub theta: f64,
}

impl ChartPoint {
    pub fn coords(&self) -> [f64; 4] {
        [self.c, self.chi, self.phi, self.theta]
    }
}

pub fn mfs_metric(point: &ChartPoint, convention: ChartConvention) -> Result<Matrix4<f64>> {
    let c = point.c;
    if !(0.0..1.0).contains(&c) {
        return Err(Error::SingularChart(format!("concurrence coordinate {c} outside [0, 1)")));
    }
    let e = 1.0 - c * c;
    let s2 = point.theta.sin().powi(2);
    let (g_phi, g_theta) = match convention {
        ChartConvention::A => (e, e * s2),
        ChartConvention::B => (e * s2, e),
    };
    Ok(Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0 / e, c * c, g_phi, g_theta)))
}

/// [`mfs_metric`] as a [`MetricField`] over `(C, χ, Φ, Θ)`.
///
/// Panics if evaluated at `C ∉ [0, 1)`; keep the finite-difference stencil
/// inside the chart.
#[derive(Debug, Clone, Copy)]
pub struct MfsField(pub ChartConvention);

impl MetricField for MfsField {
    fn dim(&self) -> usize {
        4
    }

    fn metric(&self, x: &[f64]) -> DMatrix<f64> {
        let p = ChartPoint { c: x[0], chi: x[1], phi: x[2], theta: x[3] };
        let g = mfs_metric(&p, self.0).expect("stencil left the MFS chart");
        DMatrix::from_column_slice(4, 4, g.as_slice())
    }
}
