//! Scalar-curvature landscapes over two circuit parameters.

use std::path::Path;

use crate::ansatz::{ricci_closed_circuit, AnsatzKind};
use crate::error::{Error, Result};

pub const DEFAULT_GRID: usize = 201;
pub const DEFAULT_CLIP: (f64, f64) = (-5.0, 10.0);

/// Curvature on a `resolution × resolution` grid over `[0, 2π]²`. Row `i`
/// holds `θ_a = axis[i]`, column `j` holds `θ_b = axis[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeGrid {
    pub kind: AnsatzKind,
    /// Zero-based scanned parameter indices.
    pub indices: (usize, usize),
    pub resolution: usize,
    /// Values of every parameter; the scanned slots are overwritten per cell.
    pub base_theta: Vec<f64>,
    pub clip: (f64, f64),
    pub axis: Vec<f64>,
    /// Row-major clipped curvature values.
    pub values: Vec<f64>,
    /// Whether the unclipped value fell outside `clip` (or was singular).
    pub clipped: Vec<bool>,
}

impl LandscapeGrid {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.resolution + j]
    }

    pub fn is_clipped(&self, i: usize, j: usize) -> bool {
        self.clipped[i * self.resolution + j]
    }

    /// Long-format CSV with columns `i, j, theta_a, theta_b, ricci, clipped`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["i", "j", "theta_a", "theta_b", "ricci", "clipped"])?;
        for i in 0..self.resolution {
            for j in 0..self.resolution {
                w.write_record([
                    i.to_string(),
                    j.to_string(),
                    self.axis[i].to_string(),
                    self.axis[j].to_string(),
                    self.value(i, j).to_string(),
                    u8::from(self.is_clipped(i, j)).to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

pub fn scan_landscape(
    kind: AnsatzKind,
    indices: (usize, usize),
    base_theta: &[f64],
    resolution: usize,
    clip: (f64, f64),
) -> Result<LandscapeGrid> {
    kind.check_params(base_theta)?;
    let m = kind.num_params();
    let (a, b) = indices;
    if a >= m || b >= m {
        return Err(Error::Config(format!("scanned index out of range for {kind} ({m} parameters)")));
    }
    if a == b {
        return Err(Error::Config("the two scanned indices must differ".into()));
    }
    if resolution < 2 {
        return Err(Error::Config(format!("grid resolution must be at least 2, got {resolution}")));
    }
    let (lo, hi) = clip;
    if !(lo < hi) {
        return Err(Error::Config(format!("clip bounds must satisfy lo < hi, got [{lo}, {hi}]")));
    }
    let axis: Vec<f64> = (0..resolution)
        .map(|i| std::f64::consts::TAU * i as f64 / (resolution - 1) as f64)
        .collect();
    let mut values = Vec::with_capacity(resolution * resolution);
    let mut clipped = Vec::with_capacity(resolution * resolution);
    let mut theta = base_theta.to_vec();
    for &ta in &axis {
        for &tb in &axis {
            theta[a] = ta;
            theta[b] = tb;
            let raw = match ricci_closed_circuit(kind, &theta) {
                Ok(r) => r,
                Err(Error::CurvatureSingularity { .. }) => f64::NEG_INFINITY,
                Err(e) => return Err(e),
            };
            values.push(raw.clamp(lo, hi));
            clipped.push(!(lo..=hi).contains(&raw));
        }
    }
    Ok(LandscapeGrid {
        kind,
        indices,
        resolution,
        base_theta: base_theta.to_vec(),
        clip,
        axis,
        values,
        clipped,
    })
}
