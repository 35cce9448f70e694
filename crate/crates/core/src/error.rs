use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{kind} expects {expected} parameters, got {got}")]
    ParamCount {
        kind: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("state is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Scalar curvature diverges as the concurrence approaches one.
    #[error("curvature singularity at concurrence {concurrence}")]
    CurvatureSingularity { concurrence: f64 },

    #[error("chart is singular at this point: {0}")]
    SingularChart(String),

    #[error("metric is ill-conditioned: smallest singular value {singular_value:e}")]
    IllConditioned { singular_value: f64 },

    #[error("metric is fully degenerate (largest eigenvalue {largest:e})")]
    DegenerateMetric { largest: f64 },

    #[error("numerical inconsistency: {0}")]
    Numerical(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
