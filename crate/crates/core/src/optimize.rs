//! Gradient descent and quantum natural gradient loops, instrumented with
//! concurrence and scalar curvature at every step.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ansatz::{prepare_state, AnsatzKind};
use crate::error::{Error, Result};
use crate::geometry::{concurrence, ricci_closed};
use crate::qgt::{fs_metric, invert_metric, InversionPolicy, MetricMode};
use crate::vqe::{energy, energy_gradient, exact_ground, Hamiltonian};

/// Concurrence is clamped to this before evaluating the curvature in traces.
pub const RICCI_CLAMP: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Optimizer {
    #[default]
    Gd,
    Qng,
}

impl fmt::Display for Optimizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Optimizer::Gd => "gd",
            Optimizer::Qng => "qng",
        })
    }
}

impl FromStr for Optimizer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gd" => Ok(Optimizer::Gd),
            "qng" => Ok(Optimizer::Qng),
            _ => Err(Error::Config(format!("unknown optimizer {s:?} (expected gd or qng)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopRule {
    /// `|E_t − E_{t−1}| < tol`.
    #[default]
    EnergyChange,
    /// `‖∇E‖ < tol` at the new point.
    GradientNorm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptConfig {
    pub learning_rate: f64,
    pub max_steps: usize,
    pub tol: f64,
    pub optimizer: Optimizer,
    pub metric_mode: MetricMode,
    pub inversion: InversionPolicy,
    pub stop_rule: StopRule,
    pub seed: u64,
}

impl Default for OptConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.05,
            max_steps: 200,
            tol: 1e-6,
            optimizer: Optimizer::Gd,
            metric_mode: MetricMode::BlockDiagonal,
            inversion: InversionPolicy::default(),
            stop_rule: StopRule::EnergyChange,
            seed: 0,
        }
    }
}

impl OptConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::Config(format!("learning rate must be positive, got {}", self.learning_rate)));
        }
        if self.max_steps == 0 {
            return Err(Error::Config("max_steps must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!("tol must be positive, got {}", self.tol)));
        }
        self.inversion.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecord {
    pub step: usize,
    pub theta: Vec<f64>,
    pub energy: f64,
    pub energy_error: f64,
    pub concurrence: f64,
    /// Curvature at the unclamped concurrence; `-inf` at `C = 1`.
    pub ricci_raw: f64,
    /// Curvature at `min(C, 1 − 1e−9)`.
    pub ricci: f64,
    pub grad_norm: f64,
    /// The update that produced this point fell back to plain gradient
    /// descent because the metric was fully degenerate.
    pub fallback: bool,
}

pub fn step_gd(theta: &[f64], grad: &[f64], config: &OptConfig) -> Vec<f64> {
    theta.iter().zip(grad).map(|(t, g)| t - config.learning_rate * g).collect()
}

/// `θ − η·g⁺·∇E`. Returns the new point and whether the step fell back to
/// [`step_gd`] because `g` is fully degenerate.
pub fn step_qng(theta: &[f64], grad: &[f64], g: &DMatrix<f64>, config: &OptConfig) -> Result<(Vec<f64>, bool)> {
    if g.nrows() != theta.len() || grad.len() != theta.len() {
        return Err(Error::InvalidInput(format!(
            "metric is {}×{}, parameters {}, gradient {}",
            g.nrows(),
            g.ncols(),
            theta.len(),
            grad.len()
        )));
    }
    match invert_metric(g, config.inversion) {
        Ok(inv) => {
            let dir = inv * DVector::from_column_slice(grad);
            Ok((theta.iter().zip(dir.iter()).map(|(t, d)| t - config.learning_rate * d).collect(), false))
        }
        Err(Error::DegenerateMetric { .. }) => Ok((step_gd(theta, grad, config), true)),
        Err(e) => Err(e),
    }
}

fn record(kind: AnsatzKind, h: &Hamiltonian, e0: f64, step: usize, theta: Vec<f64>, fallback: bool) -> Result<(TraceRecord, Vec<f64>)> {
    let psi = prepare_state(kind, &theta)?;
    let e = energy(h, &psi)?;
    if !e.is_finite() {
        return Err(Error::Numerical(format!("non-finite energy at step {step}, θ = {theta:?}")));
    }
    let grad = energy_gradient(kind, &theta, h)?;
    let c = concurrence(&psi);
    let rec = TraceRecord {
        step,
        energy: e,
        energy_error: e - e0,
        concurrence: c,
        ricci_raw: ricci_closed(c).unwrap_or(f64::NEG_INFINITY),
        ricci: ricci_closed(c.min(RICCI_CLAMP))?,
        grad_norm: grad.iter().map(|g| g * g).sum::<f64>().sqrt(),
        fallback,
        theta,
    };
    Ok((rec, grad))
}

/// Runs one optimization from `theta0`. The returned trace starts with the
/// initial point (step 0) and has at most `max_steps + 1` records.
pub fn run_optimization(kind: AnsatzKind, h: &Hamiltonian, theta0: &[f64], config: &OptConfig) -> Result<Vec<TraceRecord>> {
    config.validate()?;
    kind.check_params(theta0)?;
    let e0 = exact_ground(h).e0;
    let (first, mut grad) = record(kind, h, e0, 0, theta0.to_vec(), false)?;
    let mut trace = vec![first];
    for step in 1..=config.max_steps {
        let prev = trace.last().expect("trace is never empty");
        let (theta, fallback) = match config.optimizer {
            Optimizer::Gd => (step_gd(&prev.theta, &grad, config), false),
            Optimizer::Qng => {
                let g = fs_metric(kind, &prev.theta, config.metric_mode)?;
                step_qng(&prev.theta, &grad, g.entries(), config)?
            }
        };
        let prev_energy = prev.energy;
        let (rec, next_grad) = record(kind, h, e0, step, theta, fallback)?;
        let done = match config.stop_rule {
            StopRule::EnergyChange => (rec.energy - prev_energy).abs() < config.tol,
            StopRule::GradientNorm => rec.grad_norm < config.tol,
        };
        trace.push(rec);
        grad = next_grad;
        if done {
            break;
        }
    }
    Ok(trace)
}

/// Initial point of trial `trial`: each θⱼ uniform on [0, 2π) from a ChaCha8
/// stream keyed by `(seed, trial)`.
pub fn initial_theta(kind: AnsatzKind, seed: u64, trial: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    (0..kind.num_params())
        .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
        .collect()
}

/// Runs `trials` independent optimizations in parallel; results are in trial
/// order and any failing trial aborts the batch.
pub fn run_trials(kind: AnsatzKind, h: &Hamiltonian, config: &OptConfig, trials: usize) -> Result<Vec<Vec<TraceRecord>>> {
    (0..trials)
        .into_par_iter()
        .map(|k| run_optimization(kind, h, &initial_theta(kind, config.seed, k), config))
        .collect()
}
