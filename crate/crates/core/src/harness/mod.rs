//! Experiment orchestration behind the command-line interface: multi-trial
//! VQE runs, curvature landscape scans, Hopf inspection and the validation
//! suites.

mod experiment;
mod hopf_report;
mod landscape;
mod validate;

pub use experiment::{run_vqe, summarize, write_trace_csv, ExperimentConfig, Summary, SUCCESS_THRESHOLD, TRACE_COLUMNS};
pub use hopf_report::HopfReport;
pub use landscape::{scan_landscape, LandscapeGrid, DEFAULT_CLIP, DEFAULT_GRID};
pub use validate::{run_validation, tabulated_constant, ConcurrenceFn, SuiteResult};
