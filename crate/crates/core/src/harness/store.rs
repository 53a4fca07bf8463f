use super::config::ExperimentConfig;
use super::csvio;
use super::{HarnessError, HarnessResult};
use crate::pareto::ObjectiveVector;
use crate::problems::ProblemId;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub const MANIFEST_FILE: &str = "manifest.json";
pub(crate) const ELAPSED_FILE: &str = "elapsed.csv";

/// One stored optimizer run. Paths are relative to the results directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub problem: ProblemId,
    pub run: usize,
    pub seed: u64,
    pub front: String,
    pub front_sha256: String,
    pub front_size: usize,
    pub positions: String,
    pub positions_sha256: String,
    pub iterations: usize,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    /// Resolved experiment configuration, parseable as a config file.
    pub config: serde_json::Value,
    pub seeds: Vec<u64>,
    pub runs: Vec<RunRecord>,
}

impl Manifest {
    pub fn experiment_config(&self) -> HarnessResult<ExperimentConfig> {
        ExperimentConfig::parse(&self.config.to_string())
    }

    pub fn load(results_dir: &Path) -> HarnessResult<Self> {
        let path = results_dir.join(MANIFEST_FILE);
        if !path.is_file() {
            return Err(HarnessError::Usage(format!(
                "{} is not a results directory (no {MANIFEST_FILE})",
                results_dir.display()
            )));
        }
        let text = csvio::read_file(&path)?;
        serde_json::from_str(&text)
            .map_err(|e| HarnessError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn write(&self, results_dir: &Path) -> HarnessResult<()> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        csvio::write_file(&results_dir.join(MANIFEST_FILE), text.as_bytes())
    }

    pub fn runs_for(&self, problem: ProblemId) -> impl Iterator<Item = &RunRecord> {
        self.runs.iter().filter(move |r| r.problem == problem)
    }

    pub fn problems(&self) -> Vec<ProblemId> {
        let mut p: Vec<ProblemId> = self.runs.iter().map(|r| r.problem).collect();
        p.sort();
        p.dedup();
        p
    }
}

pub(crate) fn front_path(problem: ProblemId, run: usize) -> String {
    format!("fronts/{problem}/run_{run:03}.csv")
}

pub(crate) fn positions_path(problem: ProblemId, run: usize) -> String {
    format!("positions/{problem}/run_{run:03}.csv")
}

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub(crate) fn read_run_front(results_dir: &Path, record: &RunRecord) -> HarnessResult<Vec<ObjectiveVector>> {
    let path: PathBuf = results_dir.join(&record.front);
    csvio::read_front(&path)
}
