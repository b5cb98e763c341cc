use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid embedding configuration: {0}")]
    InvalidConfig(String),

    #[error("series too short{}: length {len} < embedding dimension {dim}", context_suffix(.context))]
    SeriesTooShort {
        len: usize,
        dim: usize,
        context: Option<String>,
    },

    #[error("invalid time series: {0}")]
    InvalidSeries(String),

    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NumericalFailure { sweeps: usize, off_norm: f64 },

    #[error("empty dataset: {0}")]
    EmptyDataset(String),

    #[error("header mismatch in {path}: expected {expected:?}, found {found:?}")]
    HeaderMismatch {
        path: PathBuf,
        expected: Vec<String>,
        found: Vec<String>,
    },

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate instance id {id:?} in class {class:?}")]
    DuplicateInstance { class: String, id: String },

    #[error("output directory {0} already exists and is not empty")]
    OutputExists(PathBuf),

    #[error("split infeasible: {0}")]
    SplitInfeasible(String),

    #[error("invalid test ratio {0}: must lie strictly between 0 and 1")]
    InvalidRatio(f64),

    #[error("invalid split plan: {0}")]
    InvalidPlan(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("no law columns for class {0:?}")]
    EmptyGroup(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("length mismatch: {left} predictions vs {right} truths")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid experiment configuration: {0}")]
    InvalidExperiment(String),

    #[error("run {run} (seed {seed}): {source}")]
    Run {
        run: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("worker pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

fn context_suffix(context: &Option<String>) -> String {
    match context {
        Some(c) => format!(" ({c})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    /// True for failures of the numerical kernel rather than bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NumericalFailure { .. } => true,
            Error::Run { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}
