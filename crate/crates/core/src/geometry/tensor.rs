//! Finite-difference tensor calculus for low-dimensional metrics.
//!
//! Metric derivatives come from central differences; the derivatives of the
//! Christoffel symbols needed for the scalar curvature come from differencing
//! the Christoffel computation itself. The curvature is Richardson-extrapolated
//! from steps `h` and `h/2`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub const DEFAULT_STEP: f64 = 1e-4;

/// Smallest singular value accepted before the metric is deemed singular.
const MIN_SINGULAR_VALUE: f64 = 1e-10;

/// A Riemannian metric given by its components in one chart.
pub trait MetricField {
    fn dim(&self) -> usize;
    fn metric(&self, x: &[f64]) -> DMatrix<f64>;
}

/// Adapts a closure to [`MetricField`].
pub struct FnMetric<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> DMatrix<f64>> FnMetric<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&[f64]) -> DMatrix<f64>> MetricField for FnMetric<F> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn metric(&self, x: &[f64]) -> DMatrix<f64> {
        (self.f)(x)
    }
}

/// Christoffel symbols `Γᶜ_ab`, indexed `[c][a][b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Christoffel {
    dim: usize,
    data: Vec<f64>,
}

impl Christoffel {
    fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, c: usize, a: usize, b: usize) -> f64 {
        self.data[(c * self.dim + a) * self.dim + b]
    }

    fn set(&mut self, c: usize, a: usize, b: usize, v: f64) {
        let n = self.dim;
        self.data[(c * n + a) * n + b] = v;
    }
}

fn shifted(x: &[f64], i: usize, dx: f64) -> Vec<f64> {
    let mut y = x.to_vec();
    y[i] += dx;
    y
}

fn checked_inverse(g: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let smallest = g.singular_values().min();
    if !(smallest > MIN_SINGULAR_VALUE) {
        return Err(Error::IllConditioned { singular_value: smallest });
    }
    g.clone()
        .try_inverse()
        .ok_or(Error::IllConditioned { singular_value: smallest })
}

fn check_point(field: &dyn MetricField, x: &[f64], h: f64) -> Result<()> {
    if x.len() != field.dim() {
        return Err(Error::InvalidInput(format!(
            "point has {} coordinates, metric dimension is {}",
            x.len(),
            field.dim()
        )));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidInput(format!("step must be positive, got {h}")));
    }
    Ok(())
}

/// `Γᶜ_ab = ½ gᶜᵈ (∂_b g_da + ∂_a g_db − ∂_d g_ab)` with metric derivatives
/// by central differences of step `h`.
pub fn christoffel(field: &dyn MetricField, x: &[f64], h: f64) -> Result<Christoffel> {
    check_point(field, x, h)?;
    christoffel_unchecked(field, x, h)
}

fn christoffel_unchecked(field: &dyn MetricField, x: &[f64], h: f64) -> Result<Christoffel> {
    let n = field.dim();
    let ginv = checked_inverse(&field.metric(x))?;
    // dg[d][(a, b)] = ∂_d g_ab
    let dg: Vec<DMatrix<f64>> = (0..n)
        .map(|d| (field.metric(&shifted(x, d, h)) - field.metric(&shifted(x, d, -h))) / (2.0 * h))
        .collect();
    let mut gamma = Christoffel::zeros(n);
    for c in 0..n {
        for a in 0..n {
            for b in a..n {
                let v: f64 = (0..n)
                    .map(|d| ginv[(c, d)] * (dg[b][(d, a)] + dg[a][(d, b)] - dg[d][(a, b)]))
                    .sum::<f64>()
                    * 0.5;
                gamma.set(c, a, b, v);
                gamma.set(c, b, a, v);
            }
        }
    }
    Ok(gamma)
}

fn curvature_at_step(field: &dyn MetricField, x: &[f64], h: f64) -> Result<f64> {
    let n = field.dim();
    let ginv = checked_inverse(&field.metric(x))?;
    let gamma = christoffel_unchecked(field, x, h)?;
    // dgamma[e] = ∂_e Γ
    let dgamma: Vec<Christoffel> = (0..n)
        .map(|e| {
            let plus = christoffel_unchecked(field, &shifted(x, e, h), h)?;
            let minus = christoffel_unchecked(field, &shifted(x, e, -h), h)?;
            let mut out = Christoffel::zeros(n);
            for (o, (p, m)) in out.data.iter_mut().zip(plus.data.iter().zip(&minus.data)) {
                *o = (p - m) / (2.0 * h);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut r = 0.0;
    for a in 0..n {
        for b in 0..n {
            let mut ricci_ab = 0.0;
            for c in 0..n {
                ricci_ab += dgamma[c].get(c, a, b) - dgamma[b].get(c, a, c);
                for d in 0..n {
                    ricci_ab += gamma.get(d, a, b) * gamma.get(c, c, d) - gamma.get(d, a, c) * gamma.get(c, b, d);
                }
            }
            r += ginv[(a, b)] * ricci_ab;
        }
    }
    Ok(r)
}

/// Scalar curvature `gᵃᵇ(Γᶜ_ab,c − Γᶜ_ac,b + Γᵈ_ab Γᶜ_cd − Γᵈ_ac Γᶜ_bd)`.
pub fn scalar_curvature_numeric(field: &dyn MetricField, x: &[f64], h: f64) -> Result<f64> {
    check_point(field, x, h)?;
    let coarse = curvature_at_step(field, x, h)?;
    let fine = curvature_at_step(field, x, h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sphere() -> FnMetric<impl Fn(&[f64]) -> DMatrix<f64>> {
        FnMetric::new(2, |x: &[f64]| DMatrix::from_diagonal(&nalgebra::dvector![1.0, x[0].sin().powi(2)]))
    }

    #[test]
    fn flat_christoffel_vanishes() {
        let flat = FnMetric::new(2, |_: &[f64]| DMatrix::identity(2, 2));
        let g = christoffel(&flat, &[0.3, -1.2], DEFAULT_STEP).unwrap();
        assert!(g.data.iter().all(|v| v.abs() < 1e-10));
    }

    #[test]
    fn sphere_christoffel() {
        let theta = PI / 3.0;
        let g = christoffel(&sphere(), &[theta, 0.4], DEFAULT_STEP).unwrap();
        assert!((g.get(0, 1, 1) + theta.sin() * theta.cos()).abs() < 1e-6);
        assert!((g.get(1, 0, 1) - theta.cos() / theta.sin()).abs() < 1e-6);
        for c in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    assert_eq!(g.get(c, a, b), g.get(c, b, a));
                }
            }
        }
    }

    #[test]
    fn sphere_curvature() {
        for i in 1..20 {
            let theta = PI * i as f64 / 20.0;
            let r = scalar_curvature_numeric(&sphere(), &[theta, 1.0], DEFAULT_STEP).unwrap();
            assert!((r - 2.0).abs() < 1e-4, "θ = {theta}: {r}");
        }
    }

    #[test]
    fn flat_curvature() {
        let flat = FnMetric::new(4, |_: &[f64]| DMatrix::identity(4, 4));
        let r = scalar_curvature_numeric(&flat, &[0.1, 0.2, 0.3, 0.4], DEFAULT_STEP).unwrap();
        assert!(r.abs() < 1e-6);
        // polar coordinates on the plane are still flat
        let polar = FnMetric::new(2, |x: &[f64]| DMatrix::from_diagonal(&nalgebra::dvector![1.0, x[0] * x[0]]));
        assert!(scalar_curvature_numeric(&polar, &[1.3, 0.0], DEFAULT_STEP).unwrap().abs() < 1e-6);
    }

    #[test]
    fn singular_metric_rejected() {
        let err = christoffel(&sphere(), &[0.0, 0.0], DEFAULT_STEP);
        assert!(matches!(err, Err(Error::IllConditioned { .. })));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(christoffel(&sphere(), &[0.1], DEFAULT_STEP).is_err());
    }
}
