//! Benchmark problems: ZDT1, ZDT2, ZDT3, ZDT4, ZDT6 and the pressure vessel
//! design problem, each with two minimised objectives.

use crate::error::{Error, Result};
use crate::pareto::{non_dominated_filter, ObjectiveVector};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ProblemId {
    #[serde(rename = "ZDT1")]
    Zdt1,
    #[serde(rename = "ZDT2")]
    Zdt2,
    #[serde(rename = "ZDT3")]
    Zdt3,
    #[serde(rename = "ZDT4")]
    Zdt4,
    #[serde(rename = "ZDT6")]
    Zdt6,
    PressureVessel,
}

impl ProblemId {
    pub const ALL: [ProblemId; 6] = [
        ProblemId::Zdt1,
        ProblemId::Zdt2,
        ProblemId::Zdt3,
        ProblemId::Zdt4,
        ProblemId::Zdt6,
        ProblemId::PressureVessel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemId::Zdt1 => "ZDT1",
            ProblemId::Zdt2 => "ZDT2",
            ProblemId::Zdt3 => "ZDT3",
            ProblemId::Zdt4 => "ZDT4",
            ProblemId::Zdt6 => "ZDT6",
            ProblemId::PressureVessel => "PressureVessel",
        }
    }

    pub fn is_zdt(self) -> bool {
        self != ProblemId::PressureVessel
    }

    /// Conventional decision-variable count.
    pub fn default_n_vars(self) -> usize {
        match self {
            ProblemId::Zdt1 | ProblemId::Zdt2 | ProblemId::Zdt3 => 30,
            ProblemId::Zdt4 | ProblemId::Zdt6 => 10,
            ProblemId::PressureVessel => 4,
        }
    }

    /// f2 as a function of f1 on the g = 1 curve, for the ZDT family.
    pub fn analytic_f2(self, f1: f64) -> Option<f64> {
        match self {
            ProblemId::Zdt1 | ProblemId::Zdt4 => Some(1.0 - f1.sqrt()),
            ProblemId::Zdt2 | ProblemId::Zdt6 => Some(1.0 - f1 * f1),
            ProblemId::Zdt3 => Some(1.0 - f1.sqrt() - f1 * (10.0 * PI * f1).sin()),
            ProblemId::PressureVessel => None,
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '-' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        match key.as_str() {
            "zdt1" => Ok(ProblemId::Zdt1),
            "zdt2" => Ok(ProblemId::Zdt2),
            "zdt3" => Ok(ProblemId::Zdt3),
            "zdt4" => Ok(ProblemId::Zdt4),
            "zdt6" => Ok(ProblemId::Zdt6),
            "pressurevessel" => Ok(ProblemId::PressureVessel),
            _ => Err(Error::UnknownProblem(s.to_string())),
        }
    }
}

/// A decision dimension restricted to integer multiples of `step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscreteDim {
    pub index: usize,
    pub step: f64,
}

/// Thickness step of the pressure vessel shell and head.
pub const VESSEL_THICKNESS_STEP: f64 = 0.0625;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Problem {
    pub id: ProblemId,
    pub n_vars: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub discrete: Vec<DiscreteDim>,
}

impl Problem {
    /// The problem with its conventional dimension and bounds.
    pub fn new(id: ProblemId) -> Self {
        Self::with_vars(id, id.default_n_vars()).expect("default dimension is valid")
    }

    /// A ZDT problem with `n_vars` decision variables. The pressure vessel
    /// only accepts 4.
    pub fn with_vars(id: ProblemId, n_vars: usize) -> Result<Self> {
        let (lower, upper, discrete) = match id {
            ProblemId::PressureVessel => {
                if n_vars != 4 {
                    return Err(Error::InvalidConfig(vec![format!(
                        "PressureVessel has exactly 4 variables, got {n_vars}"
                    )]));
                }
                let step = VESSEL_THICKNESS_STEP;
                (
                    vec![step, step, 10.0, 10.0],
                    vec![100.0 * step, 100.0 * step, 200.0, 240.0],
                    vec![DiscreteDim { index: 0, step }, DiscreteDim { index: 1, step }],
                )
            }
            _ => {
                if n_vars < 2 {
                    return Err(Error::InvalidConfig(vec![format!(
                        "{id} needs at least 2 variables, got {n_vars}"
                    )]));
                }
                let mut lower = vec![0.0; n_vars];
                let mut upper = vec![1.0; n_vars];
                if id == ProblemId::Zdt4 {
                    lower[1..].fill(-5.0);
                    upper[1..].fill(5.0);
                }
                (lower, upper, Vec::new())
            }
        };
        Ok(Self {
            id,
            n_vars,
            lower,
            upper,
            discrete,
        })
    }

    pub fn n_objectives(&self) -> usize {
        2
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                actual: x.len(),
            });
        }
        Ok(())
    }

    /// Objective vector at `x`. `x` must already lie inside the bounds.
    pub fn evaluate(&self, x: &[f64]) -> Result<ObjectiveVector> {
        self.check_len(x)?;
        for (dim, ((&value, &lower), &upper)) in x.iter().zip(&self.lower).zip(&self.upper).enumerate() {
            if !(lower..=upper).contains(&value) {
                return Err(Error::OutOfBounds {
                    dim,
                    value,
                    lower,
                    upper,
                });
            }
        }
        let (f1, f2) = match self.id {
            ProblemId::Zdt1 => {
                let g = linear_g(x);
                (x[0], g * (1.0 - (x[0] / g).sqrt()))
            }
            ProblemId::Zdt2 => {
                let g = linear_g(x);
                (x[0], g * (1.0 - (x[0] / g).powi(2)))
            }
            ProblemId::Zdt3 => {
                let g = linear_g(x);
                let h = 1.0 - (x[0] / g).sqrt() - (x[0] / g) * (10.0 * PI * x[0]).sin();
                (x[0], g * h)
            }
            ProblemId::Zdt4 => {
                let n = x.len() as f64;
                let g = 1.0
                    + 10.0 * (n - 1.0)
                    + x[1..]
                        .iter()
                        .map(|v| v * v - 10.0 * (4.0 * PI * v).cos())
                        .sum::<f64>();
                (x[0], g * (1.0 - (x[0] / g).sqrt()))
            }
            ProblemId::Zdt6 => {
                let f1 = 1.0 - (-4.0 * x[0]).exp() * (6.0 * PI * x[0]).sin().powi(6);
                let mean = x[1..].iter().sum::<f64>() / (x.len() - 1) as f64;
                let g = 1.0 + 9.0 * mean.powf(0.25);
                (f1, g * (1.0 - (f1 / g).powi(2)))
            }
            ProblemId::PressureVessel => (vessel_cost(x), vessel_violation(x)),
        };
        Ok(ObjectiveVector::new(vec![f1, f2]))
    }

    /// Clamps each coordinate into its bounds.
    pub fn clamp_to_bounds(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&v, (&lo, &hi))| {
                if v < lo {
                    lo
                } else if v > hi {
                    hi
                } else {
                    v
                }
            })
            .collect()
    }

    /// Rounds the discrete dimensions to the nearest multiple of their step,
    /// then clamps them into bounds. Continuous dimensions are untouched.
    pub fn snap_discrete(&self, x: &[f64]) -> Vec<f64> {
        let mut out = x.to_vec();
        for d in &self.discrete {
            let snapped = (out[d.index] / d.step).round() * d.step;
            out[d.index] = snapped.clamp(self.lower[d.index], self.upper[d.index]);
        }
        out
    }

    /// Clamp followed by snap: the repair applied after every move.
    pub fn repair(&self, x: &[f64]) -> Vec<f64> {
        self.snap_discrete(&self.clamp_to_bounds(x))
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.n_vars
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| (lo..=hi).contains(&v))
    }
}

fn linear_g(x: &[f64]) -> f64 {
    1.0 + 9.0 * x[1..].iter().sum::<f64>() / (x.len() - 1) as f64
}

fn vessel_cost(x: &[f64]) -> f64 {
    let (ts, th, r, l) = (x[0], x[1], x[2], x[3]);
    0.6224 * ts * r * l + 1.7781 * th * r * r + 3.1661 * ts * ts * l + 19.84 * ts * ts * r
}

/// The three constraint values; each is satisfied when non-negative.
pub fn vessel_constraints(x: &[f64]) -> [f64; 3] {
    let (ts, th, r, l) = (x[0], x[1], x[2], x[3]);
    [
        ts - 0.0193 * r,
        th - 0.00954 * r,
        PI * r * r * l + 4.0 / 3.0 * PI * r * r * r - 1_296_000.0,
    ]
}

fn vessel_violation(x: &[f64]) -> f64 {
    vessel_constraints(x).iter().map(|g| (-g).max(0.0)).sum()
}

/// Sampled true Pareto front, sorted by strictly increasing f1 and mutually
/// non-dominated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceFront {
    points: Vec<ObjectiveVector>,
}

impl ReferenceFront {
    /// Builds a front from arbitrary points: non-dominated filtering, sort by
    /// f1, then removal of repeated f1 values.
    pub fn from_points(points: Vec<ObjectiveVector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyFront);
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite("reference front"));
        }
        let dim = points[0].len();
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: p.len(),
            });
        }
        let mut kept = non_dominated_filter(&points);
        kept.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        kept.dedup_by(|a, b| a[0] == b[0]);
        Ok(Self { points: kept })
    }

    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<ObjectiveVector> {
        self.points
    }
}

/// Default number of samples for analytic reference fronts.
pub const DEFAULT_REFERENCE_POINTS: usize = 1000;

fn unit_samples(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 })
}

/// Samples the analytic Pareto front of a ZDT problem at `n_points` values.
///
/// ZDT3's sampled curve is filtered down to its disconnected non-dominated
/// segments and ZDT6 is sampled through x1, so both may return fewer than
/// `n_points` points.
pub fn reference_front(problem: &Problem, n_points: usize) -> Result<ReferenceFront> {
    if n_points == 0 {
        return Err(Error::InvalidConfig(vec!["n_points must be positive".into()]));
    }
    let id = problem.id;
    let points: Vec<ObjectiveVector> = match id {
        ProblemId::PressureVessel => return Err(Error::NoAnalyticFront(id.to_string())),
        ProblemId::Zdt6 => unit_samples(n_points)
            .map(|x1| {
                let f1 = 1.0 - (-4.0 * x1).exp() * (6.0 * PI * x1).sin().powi(6);
                ObjectiveVector::new(vec![f1, 1.0 - f1 * f1])
            })
            .collect(),
        _ => unit_samples(n_points)
            .map(|f1| ObjectiveVector::new(vec![f1, id.analytic_f2(f1).expect("zdt")]))
            .collect(),
    };
    ReferenceFront::from_points(points)
}
