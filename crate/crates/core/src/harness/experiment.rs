//! Multi-trial VQE runs with per-trial CSV traces and a JSON summary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::ansatz::AnsatzKind;
use crate::error::{Error, Result};
use crate::optimize::{run_trials, OptConfig, TraceRecord};
use crate::vqe::{exact_ground, Hamiltonian};

/// Energy error (Hartree) counted as reaching the ground state.
pub const SUCCESS_THRESHOLD: f64 = 1e-3;

/// Leading trace columns; `theta_1 … theta_m` follow.
pub const TRACE_COLUMNS: [&str; 7] = ["step", "energy", "energy_error", "concurrence", "ricci_raw_C", "ricci", "grad_norm"];

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub kind: AnsatzKind,
    pub opt: OptConfig,
    pub hamiltonian: Hamiltonian,
    pub trials: usize,
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub ansatz: AnsatzKind,
    pub config: OptConfig,
    pub hamiltonian: Hamiltonian,
    pub e0: f64,
    pub trials: usize,
    pub success_threshold: f64,
    /// Per-step statistics across trials; a trial that stopped early
    /// contributes its final value to later steps. Standard deviations are
    /// population (1/N) values.
    pub mean_energy_error: Vec<f64>,
    pub std_energy_error: Vec<f64>,
    pub mean_concurrence: Vec<f64>,
    pub std_concurrence: Vec<f64>,
    pub mean_ricci: Vec<f64>,
    pub std_ricci: Vec<f64>,
    pub success_count: usize,
    /// First step with `energy_error ≤ success_threshold`, per trial.
    pub steps_to_threshold: Vec<Option<usize>>,
    /// Median over trials with unreached trials counted as infinite; `None`
    /// when that median is infinite.
    pub median_steps_to_threshold: Option<f64>,
    pub final_energy_error: Vec<f64>,
    pub final_concurrence: Vec<f64>,
    pub final_ricci: Vec<f64>,
    pub fallback_steps: usize,
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(|a, b| a.total_cmp(b));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

pub fn summarize(kind: AnsatzKind, config: &OptConfig, h: &Hamiltonian, traces: &[Vec<TraceRecord>]) -> Summary {
    let len = traces.iter().map(Vec::len).max().unwrap_or(0);
    let column = |t: usize, f: fn(&TraceRecord) -> f64| -> Vec<f64> {
        traces.iter().map(|tr| f(&tr[t.min(tr.len() - 1)])).collect()
    };
    let stats = |f: fn(&TraceRecord) -> f64| -> (Vec<f64>, Vec<f64>) { (0..len).map(|t| mean_std(&column(t, f))).unzip() };
    let (mean_energy_error, std_energy_error) = stats(|r| r.energy_error);
    let (mean_concurrence, std_concurrence) = stats(|r| r.concurrence);
    let (mean_ricci, std_ricci) = stats(|r| r.ricci);

    let steps_to_threshold: Vec<Option<usize>> = traces
        .iter()
        .map(|tr| tr.iter().find(|r| r.energy_error <= SUCCESS_THRESHOLD).map(|r| r.step))
        .collect();
    let med = median(steps_to_threshold.iter().map(|s| s.map_or(f64::INFINITY, |v| v as f64)).collect());
    let last = |f: fn(&TraceRecord) -> f64| traces.iter().map(|tr| f(tr.last().expect("non-empty trace"))).collect();

    Summary {
        ansatz: kind,
        config: *config,
        hamiltonian: h.clone(),
        e0: exact_ground(h).e0,
        trials: traces.len(),
        success_threshold: SUCCESS_THRESHOLD,
        mean_energy_error,
        std_energy_error,
        mean_concurrence,
        std_concurrence,
        mean_ricci,
        std_ricci,
        success_count: steps_to_threshold.iter().filter(|s| s.is_some()).count(),
        median_steps_to_threshold: med.is_finite().then_some(med),
        final_energy_error: last(|r| r.energy_error),
        final_concurrence: last(|r| r.concurrence),
        final_ricci: last(|r| r.ricci),
        fallback_steps: traces.iter().flatten().filter(|r| r.fallback).count(),
        steps_to_threshold,
    }
}

pub fn write_trace_csv(path: &Path, trace: &[TraceRecord]) -> Result<()> {
    let m = trace.first().map_or(0, |r| r.theta.len());
    let mut w = csv::Writer::from_path(path)?;
    let mut header: Vec<String> = TRACE_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.extend((1..=m).map(|j| format!("theta_{j}")));
    w.write_record(&header)?;
    for r in trace {
        let mut row = vec![
            r.step.to_string(),
            r.energy.to_string(),
            r.energy_error.to_string(),
            r.concurrence.to_string(),
            r.ricci_raw.to_string(),
            r.ricci.to_string(),
            r.grad_norm.to_string(),
        ];
        row.extend(r.theta.iter().map(f64::to_string));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Runs all trials, writes `trial_NNN.csv` for each and `summary.json` into
/// the output directory, and returns the summary.
pub fn run_vqe(config: &ExperimentConfig) -> Result<Summary> {
    if config.trials == 0 {
        return Err(Error::Config("trial count must be at least 1".into()));
    }
    config.opt.validate()?;
    fs::create_dir_all(&config.out_dir)
        .map_err(|e| Error::Config(format!("cannot create output directory {}: {e}", config.out_dir.display())))?;
    let traces = run_trials(config.kind, &config.hamiltonian, &config.opt, config.trials)?;
    for (k, trace) in traces.iter().enumerate() {
        write_trace_csv(&config.out_dir.join(format!("trial_{k:03}.csv")), trace)?;
    }
    let summary = summarize(config.kind, &config.opt, &config.hamiltonian, &traces);
    let mut f = fs::File::create(config.out_dir.join("summary.json"))?;
    serde_json::to_writer_pretty(&mut f, &summary)?;
    writeln!(f)?;
    Ok(summary)
}
