//! Batch experiments: configuration, result persistence, metric tables,
//! cross-algorithm comparison and plot-data export.
//!
//! A results directory written by [`run_experiment`] looks like
//!
//! ```text
//! <out>/manifest.json
//! <out>/elapsed.csv
//! <out>/fronts/<problem>/run_000.csv
//! <out>/positions/<problem>/run_000.csv
//! ```

mod commands;
mod config;
pub mod csvio;
mod store;

pub use commands::{
    compare, compute_metrics, decode_metrics, encode_metrics, export_plot_data, run_experiment,
    write_reference, CompareInput, CompareReport, MetricsOutput, MetricsRow, PlotDataOutput,
    SummaryRow, METRICS_FILE, SUMMARY_FILE,
};
pub use config::{ExperimentConfig, ReferenceSource};
pub use store::{Manifest, RunRecord, MANIFEST_FILE};

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{0}")]
    Usage(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    MissingReference(String),

    #[error(transparent)]
    Library(#[from] crate::Error),
}

impl HarnessError {
    /// Process exit code: 2 usage/config, 3 I/O, 4 missing reference.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Usage(_) | HarnessError::Library(_) => 2,
            HarnessError::Io { .. } => 3,
            HarnessError::MissingReference(_) => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type HarnessResult<T> = std::result::Result<T, HarnessError>;
