use super::{HarnessError, HarnessResult};
use crate::optimizer::GmocsoConfig;
use crate::problems::{Problem, ProblemId, DEFAULT_REFERENCE_POINTS};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Where the true front for a problem comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ReferenceSource {
    Analytic,
    File(PathBuf),
    /// Non-dominated union of every stored run of the problem.
    Pooled,
}

impl ReferenceSource {
    /// Analytic for the ZDT family, pooled for the pressure vessel.
    pub fn default_for(problem: ProblemId) -> Self {
        if problem.is_zdt() {
            ReferenceSource::Analytic
        } else {
            ReferenceSource::Pooled
        }
    }
}

impl FromStr for ReferenceSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "analytic" => Ok(ReferenceSource::Analytic),
            "pooled" => Ok(ReferenceSource::Pooled),
            _ => match s.strip_prefix("file:") {
                Some(p) if !p.is_empty() => Ok(ReferenceSource::File(PathBuf::from(p))),
                _ => Err(format!(
                    "invalid reference source `{s}` (expected analytic, pooled or file:PATH)"
                )),
            },
        }
    }
}

impl TryFrom<String> for ReferenceSource {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<ReferenceSource> for String {
    fn from(r: ReferenceSource) -> String {
        r.to_string()
    }
}

impl fmt::Display for ReferenceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReferenceSource::Analytic => f.write_str("analytic"),
            ReferenceSource::Pooled => f.write_str("pooled"),
            ReferenceSource::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

fn default_runs() -> usize {
    30
}

fn default_label() -> String {
    "GMOCSO".into()
}

fn default_reference_points() -> usize {
    DEFAULT_REFERENCE_POINTS
}

/// JSON experiment description. Unknown keys are rejected. Run `i` of every
/// problem uses seed `seed_base + i`, so `algorithm` must not carry a seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problems: Vec<ProblemId>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub seed_base: u64,
    /// Algorithm column written to metrics files.
    #[serde(default = "default_label")]
    pub label: String,
    #[serde(default)]
    pub algorithm: GmocsoConfig,
    /// Per-problem reference front; unlisted problems use
    /// [`ReferenceSource::default_for`].
    #[serde(default)]
    pub reference: BTreeMap<ProblemId, ReferenceSource>,
    #[serde(default = "default_reference_points")]
    pub reference_points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(problems: Vec<ProblemId>) -> Self {
        Self {
            problems,
            runs: default_runs(),
            seed_base: 0,
            label: default_label(),
            algorithm: GmocsoConfig::default(),
            reference: BTreeMap::new(),
            reference_points: default_reference_points(),
            output_dir: None,
        }
    }

    pub fn parse(text: &str) -> HarnessResult<Self> {
        let config: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        let raw: serde_json::Value =
            serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        if raw.get("algorithm").and_then(|a| a.get("seed")).is_some() {
            return Err(HarnessError::Config(
                "algorithm.seed is not allowed; run i uses seed_base + i".into(),
            ));
        }
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> HarnessResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            HarnessError::Config(msg) => HarnessError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// JSON form accepted back by [`ExperimentConfig::parse`].
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("config serializes");
        if let Some(alg) = v.get_mut("algorithm").and_then(|a| a.as_object_mut()) {
            alg.remove("seed");
        }
        v
    }

    pub fn validate(&self) -> HarnessResult<()> {
        let mut errs = Vec::new();
        if self.problems.is_empty() {
            errs.push("problems must not be empty".to_string());
        }
        if self.runs == 0 {
            errs.push("runs must be at least 1".to_string());
        }
        if self.reference_points == 0 {
            errs.push("reference_points must be at least 1".to_string());
        }
        if self.label.is_empty() || self.label.contains(',') {
            errs.push("label must be non-empty and contain no commas".to_string());
        }
        if self.seed_base.checked_add(self.runs as u64).is_none() {
            errs.push("seed_base + runs overflows u64".to_string());
        }
        for &id in &self.problems {
            if let Err(crate::Error::InvalidConfig(v)) = self.algorithm.validate(&Problem::new(id)) {
                errs.extend(v.into_iter().map(|m| format!("algorithm ({id}): {m}")));
            }
            if self.reference_for(id) == ReferenceSource::Pooled && self.runs < 2 {
                errs.push(format!("pooled reference for {id} needs at least 2 runs"));
            }
            if id == ProblemId::PressureVessel && self.reference_for(id) == ReferenceSource::Analytic {
                errs.push("PressureVessel has no analytic reference front".to_string());
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(HarnessError::Config(errs.join("; ")))
        }
    }

    pub fn reference_for(&self, id: ProblemId) -> ReferenceSource {
        self.reference
            .get(&id)
            .cloned()
            .unwrap_or_else(|| ReferenceSource::default_for(id))
    }

    pub fn seeds(&self) -> Vec<u64> {
        (0..self.runs as u64).map(|i| self.seed_base + i).collect()
    }

    pub fn run_config(&self, run: usize) -> GmocsoConfig {
        GmocsoConfig {
            seed: self.seed_base + run as u64,
            ..self.algorithm.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_takes_defaults() {
        let c = ExperimentConfig::parse(r#"{"problems": ["ZDT1", "PressureVessel"]}"#).unwrap();
        assert_eq!(c.runs, 30);
        assert_eq!(c.algorithm, GmocsoConfig::default());
        assert_eq!(c.reference_for(ProblemId::Zdt1), ReferenceSource::Analytic);
        assert_eq!(c.reference_for(ProblemId::PressureVessel), ReferenceSource::Pooled);
        assert_eq!(c.seeds()[29], 29);
    }

    #[test]
    fn unknown_keys_rejected_with_location() {
        let err = ExperimentConfig::parse("{\n  \"problems\": [\"ZDT1\"],\n  \"runz\": 3\n}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("runz") && msg.contains("line 3"), "{msg}");
        assert_eq!(err.exit_code(), 2);
        let err = ExperimentConfig::parse(r#"{"problems": ["ZDT1"], "algorithm": {"smpp": 2}}"#).unwrap_err();
        assert!(err.to_string().contains("smpp"));
    }

    #[test]
    fn seed_in_algorithm_rejected() {
        assert!(ExperimentConfig::parse(r#"{"problems": ["ZDT1"], "algorithm": {"seed": 4}}"#).is_err());
    }

    #[test]
    fn semantic_validation() {
        assert!(ExperimentConfig::parse(r#"{"problems": ["ZDT1"], "runs": 0}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"problems": ["ZDT1"], "algorithm": {"cdc": 31}}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"problems": ["PressureVessel"], "runs": 1}"#).is_err());
        assert!(ExperimentConfig::parse(r#"{"problems": ["PressureVessel"], "reference": {"PressureVessel": "analytic"}}"#).is_err());
        let ok = r#"{"problems": ["PressureVessel"], "runs": 1, "reference": {"PressureVessel": "file:front.csv"}}"#;
        assert!(ExperimentConfig::parse(ok).is_ok());
    }

    #[test]
    fn echo_round_trips() {
        let mut c = ExperimentConfig::new(vec![ProblemId::Zdt3]);
        c.reference.insert(ProblemId::Zdt3, ReferenceSource::File("x.csv".into()));
        c.algorithm.smp = 4;
        let text = serde_json::to_string_pretty(&c.to_json()).unwrap();
        assert_eq!(ExperimentConfig::parse(&text).unwrap(), c);
    }
}
