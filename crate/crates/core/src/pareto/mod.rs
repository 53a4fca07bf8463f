//! Pareto machinery shared by the optimizer, the metrics and the harness.

mod archive;
mod dominance;
mod grid;

pub use archive::{select_leader, Archive, InsertOutcome};
pub use dominance::{
    dominance, non_dominated_filter, non_dominated_indices, Dominance, HasObjectives,
};
pub use grid::{BoxIndex, Grid};

use serde::{Deserialize, Serialize};
use std::ops::Deref;

/// A point in objective space. Every objective is minimised.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    /// Euclidean distance to `other`. Both vectors must have equal length.
    pub fn distance(&self, other: &ObjectiveVector) -> f64 {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for ObjectiveVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

impl<const N: usize> From<[f64; N]> for ObjectiveVector {
    fn from(values: [f64; N]) -> Self {
        Self(values.to_vec())
    }
}

/// A cat: decision vector, velocity and the objectives evaluated at `position`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub objectives: ObjectiveVector,
}

impl Solution {
    /// A solution at rest (zero velocity).
    pub fn new(position: Vec<f64>, objectives: ObjectiveVector) -> Self {
        let velocity = vec![0.0; position.len()];
        Self {
            position,
            velocity,
            objectives,
        }
    }

    /// A bare objective point with an empty decision vector, handy for
    /// archive and grid work that never looks at positions.
    pub fn from_objectives(objectives: impl Into<ObjectiveVector>) -> Self {
        Self::new(Vec::new(), objectives.into())
    }
}
