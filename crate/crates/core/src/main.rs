//! Command-line front end: `run-vqe`, `scan-landscape`, `hopf` and
//! `validate`.
//!
//! Exit codes: 0 success, 1 validation failure, 2 configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pqc_geom::ansatz::{concurrence_closed, AnsatzKind};
use pqc_geom::harness::{run_validation, run_vqe, scan_landscape, ExperimentConfig, HopfReport, DEFAULT_GRID};
use pqc_geom::optimize::{OptConfig, Optimizer, StopRule};
use pqc_geom::qgt::{InversionPolicy, MetricMode};
use pqc_geom::vqe::Hamiltonian;
use pqc_geom::{Error, Result};

#[derive(Parser)]
#[command(name = "pqc-geom", version, about = "Geometry and natural-gradient VQE for two-qubit circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded VQE trials and write per-trial traces plus a summary.
    RunVqe(RunVqeArgs),
    /// Tabulate the clipped scalar curvature over two circuit parameters.
    ScanLandscape(ScanArgs),
    /// Print Hopf base and fiber coordinates of a circuit state as JSON.
    Hopf(HopfArgs),
    /// Run every oracle suite and print a pass/fail table.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AnsatzArg {
    Hea,
    Ldca,
    Qgan,
    Shea,
    QganAug,
}

impl From<AnsatzArg> for AnsatzKind {
    fn from(a: AnsatzArg) -> Self {
        match a {
            AnsatzArg::Hea => AnsatzKind::Hea,
            AnsatzArg::Ldca => AnsatzKind::Ldca,
            AnsatzArg::Qgan => AnsatzKind::Qgan,
            AnsatzArg::Shea => AnsatzKind::Shea,
            AnsatzArg::QganAug => AnsatzKind::QganAug,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OptimizerArg {
    Gd,
    Qng,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Dense,
    Block,
    Diag,
}

#[derive(Clone, Copy, ValueEnum)]
enum StopArg {
    Energy,
    Grad,
}

#[derive(Args)]
struct RunVqeArgs {
    #[arg(long, value_enum)]
    ansatz: AnsatzArg,
    #[arg(long, value_enum, default_value = "gd")]
    optimizer: OptimizerArg,
    #[arg(long, value_enum, default_value = "block")]
    metric: MetricArg,
    #[arg(long, default_value_t = 0.05)]
    lr: f64,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Stop on successive energy change or on gradient norm.
    #[arg(long, value_enum, default_value = "energy")]
    stop: StopArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Hamiltonian JSON file, or one of the bundled names `entangled`, `product`.
    #[arg(long, default_value = "entangled")]
    hamiltonian: String,
    #[arg(long)]
    out: PathBuf,
    /// Pseudo-inverse cutoff relative to the largest metric eigenvalue.
    #[arg(long, default_value_t = 1e-8, conflicts_with = "tikhonov")]
    rcond: f64,
    /// Invert `g + εI` instead of taking the pseudo-inverse.
    #[arg(long, value_name = "EPS")]
    tikhonov: Option<f64>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    ansatz: AnsatzArg,
    /// The two scanned parameters, 1-based.
    #[arg(long, num_args = 2, value_names = ["A", "B"], default_values_t = [1, 2])]
    scan: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [-5.0, 10.0], allow_negative_numbers = true)]
    clip: Vec<f64>,
    /// Value of a non-scanned parameter as `index=value` (1-based); others are 0.
    #[arg(long = "fix", value_name = "INDEX=VALUE")]
    fix: Vec<String>,
    /// Output CSV file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct HopfArgs {
    #[arg(long, value_enum)]
    ansatz: AnsatzArg,
    /// Comma-separated parameters θ₁,…,θ_m.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    theta: Vec<f64>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Random draws per ansatz for the cheap suites.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
}

fn load_hamiltonian(spec: &str) -> Result<Hamiltonian> {
    match spec {
        "entangled" => Ok(Hamiltonian::entangled()),
        "product" => Ok(Hamiltonian::product()),
        path => Hamiltonian::load(path.as_ref()),
    }
}

fn run_vqe_cmd(a: RunVqeArgs) -> Result<()> {
    let inversion = match a.tikhonov {
        Some(eps) => InversionPolicy::Tikhonov { eps },
        None => InversionPolicy::PseudoInverse { rcond: a.rcond },
    };
    let opt = OptConfig {
        learning_rate: a.lr,
        max_steps: a.steps,
        tol: a.tol,
        optimizer: match a.optimizer {
            OptimizerArg::Gd => Optimizer::Gd,
            OptimizerArg::Qng => Optimizer::Qng,
        },
        metric_mode: match a.metric {
            MetricArg::Dense => MetricMode::Dense,
            MetricArg::Block => MetricMode::BlockDiagonal,
            MetricArg::Diag => MetricMode::Diagonal,
        },
        inversion,
        stop_rule: match a.stop {
            StopArg::Energy => StopRule::EnergyChange,
            StopArg::Grad => StopRule::GradientNorm,
        },
        seed: a.seed,
    };
    let config = ExperimentConfig {
        kind: a.ansatz.into(),
        opt,
        hamiltonian: load_hamiltonian(&a.hamiltonian)?,
        trials: a.trials,
        out_dir: a.out,
    };
    let s = run_vqe(&config)?;
    let median = s.median_steps_to_threshold.map_or("not reached".to_string(), |m| m.to_string());
    println!(
        "{} {} ({}): {}/{} trials reached error <= {:e}; median steps {}; output in {}",
        s.ansatz,
        opt.optimizer,
        opt.metric_mode,
        s.success_count,
        s.trials,
        s.success_threshold,
        median,
        config.out_dir.display()
    );
    Ok(())
}

fn parse_fix(spec: &str, m: usize) -> Result<(usize, f64)> {
    let bad = || Error::Config(format!("--fix expects INDEX=VALUE with 1 <= INDEX <= {m}, got {spec:?}"));
    let (i, v) = spec.split_once('=').ok_or_else(bad)?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    let v: f64 = v.trim().parse().map_err(|_| bad())?;
    if i == 0 || i > m || !v.is_finite() {
        return Err(bad());
    }
    Ok((i - 1, v))
}

fn scan_cmd(a: ScanArgs) -> Result<()> {
    let kind: AnsatzKind = a.ansatz.into();
    let m = kind.num_params();
    let mut theta = vec![0.0; m];
    for f in &a.fix {
        let (i, v) = parse_fix(f, m)?;
        theta[i] = v;
    }
    let (sa, sb) = (a.scan[0], a.scan[1]);
    if sa == 0 || sb == 0 {
        return Err(Error::Config("scanned indices are 1-based".into()));
    }
    let grid = scan_landscape(kind, (sa - 1, sb - 1), &theta, a.grid, (a.clip[0], a.clip[1]))?;
    grid.write_csv(&a.out)?;
    let clipped = grid.clipped.iter().filter(|&&c| c).count();
    println!("{}x{} grid written to {} ({clipped} cells clipped)", a.grid, a.grid, a.out.display());
    Ok(())
}

fn hopf_cmd(a: HopfArgs) -> Result<()> {
    let report = HopfReport::new(a.ansatz.into(), &a.theta)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn validate_cmd(a: ValidateArgs) -> Result<bool> {
    let results = run_validation(concurrence_closed, a.samples)?;
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    for r in &results {
        println!("{:<width$}  {}  {}", r.name, if r.passed { "PASS" } else { "FAIL" }, r.detail);
    }
    Ok(results.iter().all(|r| r.passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::RunVqe(a) => run_vqe_cmd(a).map(|_| true),
        Command::ScanLandscape(a) => scan_cmd(a).map(|_| true),
        Command::Hopf(a) => hopf_cmd(a).map(|_| true),
        Command::Validate(a) => validate_cmd(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
