//! Quantum geometric tensor over circuit parameters and the Fubini-Study
//! metric derived from it, with the masked approximations and regularized
//! inverses used by natural-gradient steps.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ansatz::{prepare_state, state_jacobian, AnsatzKind};
use crate::error::{Error, Result};
use crate::simulator::Statevector;

/// A metric whose largest eigenvalue is at most this is treated as zero.
const DEGENERATE_FLOOR: f64 = 1e-14;

/// `G_ij = ⟨∂ᵢΨ|∂ⱼΨ⟩ − ⟨∂ᵢΨ|Ψ⟩⟨Ψ|∂ⱼΨ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct QgTensor(DMatrix<Complex64>);

impl QgTensor {
    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// Real part, symmetrized so that it is exactly symmetric.
    pub fn fubini_study(&self) -> DMatrix<f64> {
        let re = self.0.map(|z| z.re);
        (&re + re.transpose()) * 0.5
    }
}

pub fn qgt_from_jacobian(psi: &Statevector, jac: &DMatrix<Complex64>) -> QgTensor {
    let psi = DMatrix::from_column_slice(4, 1, psi.amplitudes());
    let jd = jac.adjoint();
    let overlap = &jd * &psi;
    QgTensor(&jd * jac - &overlap * overlap.adjoint())
}

pub fn qgt_full(kind: AnsatzKind, theta: &[f64]) -> Result<QgTensor> {
    let psi = prepare_state(kind, theta)?;
    let jac = state_jacobian(kind, theta)?;
    Ok(qgt_from_jacobian(&psi, &jac))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricMode {
    Dense,
    #[default]
    BlockDiagonal,
    Diagonal,
}

impl MetricMode {
    pub fn name(self) -> &'static str {
        match self {
            MetricMode::Dense => "dense",
            MetricMode::BlockDiagonal => "block",
            MetricMode::Diagonal => "diag",
        }
    }
}

impl fmt::Display for MetricMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" | "full" => Ok(MetricMode::Dense),
            "block" | "block-diagonal" | "block_diagonal" => Ok(MetricMode::BlockDiagonal),
            "diag" | "diagonal" => Ok(MetricMode::Diagonal),
            _ => Err(Error::Config(format!("unknown metric mode {s:?} (expected dense, block or diag)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricTensor {
    entries: DMatrix<f64>,
    mode: MetricMode,
}

impl MetricTensor {
    /// Applies the mask of `mode` to a symmetric matrix. `blocks` is the index
    /// partition used in block-diagonal mode.
    pub fn masked(g: &DMatrix<f64>, mode: MetricMode, blocks: &[&[usize]]) -> Self {
        let n = g.nrows();
        let mut keep = DMatrix::from_element(n, n, false);
        match mode {
            MetricMode::Dense => keep.fill(true),
            MetricMode::Diagonal => keep.fill_diagonal(true),
            MetricMode::BlockDiagonal => {
                for block in blocks {
                    for &i in block.iter() {
                        for &j in block.iter() {
                            keep[(i, j)] = true;
                        }
                    }
                }
            }
        }
        let entries = DMatrix::from_fn(n, n, |i, j| if keep[(i, j)] { g[(i, j)] } else { 0.0 });
        Self { entries, mode }
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn mode(&self) -> MetricMode {
        self.mode
    }
}

pub fn fs_metric(kind: AnsatzKind, theta: &[f64], mode: MetricMode) -> Result<MetricTensor> {
    let g = qgt_full(kind, theta)?.fubini_study();
    Ok(MetricTensor::masked(&g, mode, kind.metric_blocks()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InversionPolicy {
    /// Spectral pseudo-inverse dropping eigenvalues at or below `rcond·λ_max`.
    PseudoInverse { rcond: f64 },
    /// `(g + εI)⁻¹`.
    Tikhonov { eps: f64 },
}

impl Default for InversionPolicy {
    fn default() -> Self {
        InversionPolicy::PseudoInverse { rcond: 1e-8 }
    }
}

impl InversionPolicy {
    pub fn validate(&self) -> Result<()> {
        let (name, v) = match *self {
            InversionPolicy::PseudoInverse { rcond } => ("rcond", rcond),
            InversionPolicy::Tikhonov { eps } => ("eps", eps),
        };
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(Error::Config(format!("{name} must be positive and finite, got {v}")))
        }
    }
}

fn symmetrized(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

pub fn invert_metric(g: &DMatrix<f64>, policy: InversionPolicy) -> Result<DMatrix<f64>> {
    policy.validate()?;
    if !g.is_square() {
        return Err(Error::InvalidInput(format!("metric is {}×{}", g.nrows(), g.ncols())));
    }
    let n = g.nrows();
    match policy {
        InversionPolicy::PseudoInverse { rcond } => {
            let eig = SymmetricEigen::new(g.clone());
            let largest = eig.eigenvalues.max();
            if !(largest > DEGENERATE_FLOOR) {
                return Err(Error::DegenerateMetric { largest });
            }
            let cutoff = rcond * largest;
            let inv_vals = eig.eigenvalues.map(|l| if l > cutoff { 1.0 / l } else { 0.0 });
            let v = &eig.eigenvectors;
            Ok(symmetrized(v * DMatrix::from_diagonal(&inv_vals) * v.transpose()))
        }
        InversionPolicy::Tikhonov { eps } => {
            let shifted = g + DMatrix::identity(n, n) * eps;
            let inv = shifted.try_inverse().ok_or(Error::DegenerateMetric { largest: g.amax() })?;
            Ok(symmetrized(inv))
        }
    }
}
