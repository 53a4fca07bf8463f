//! Front quality indicators.
//!
//! No objective normalisation is applied; values are in raw objective units.
//! [`rgd`] is the mean distance from the reference front to the obtained
//! front, often called IGD elsewhere.

use crate::error::{Error, Result};
use crate::pareto::ObjectiveVector;
use std::cmp::Ordering;

/// A reference (true) front and an approximate front of equal dimension.
#[derive(Debug, Clone, Copy)]
pub struct FrontPair<'a> {
    reference: &'a [ObjectiveVector],
    approximate: &'a [ObjectiveVector],
}

impl<'a> FrontPair<'a> {
    pub fn new(reference: &'a [ObjectiveVector], approximate: &'a [ObjectiveVector]) -> Result<Self> {
        let (Some(r), Some(_)) = (reference.first(), approximate.first()) else {
            return Err(Error::EmptyFront);
        };
        let dim = r.len();
        if let Some(p) = reference.iter().chain(approximate).find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: p.len(),
            });
        }
        Ok(Self {
            reference,
            approximate,
        })
    }

    pub fn reference(&self) -> &'a [ObjectiveVector] {
        self.reference
    }

    pub fn approximate(&self) -> &'a [ObjectiveVector] {
        self.approximate
    }
}

fn nearest(p: &ObjectiveVector, set: &[ObjectiveVector]) -> f64 {
    set.iter().map(|q| p.distance(q)).fold(f64::INFINITY, f64::min)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Mean over reference points of the distance to the closest approximate point.
pub fn rgd(pair: &FrontPair<'_>) -> f64 {
    let d: Vec<f64> = pair.reference.iter().map(|p| nearest(p, pair.approximate)).collect();
    mean(&d)
}

/// Population standard deviation of nearest-other-member distances.
pub fn spacing(approximate: &[ObjectiveVector]) -> Result<f64> {
    if approximate.len() < 2 {
        return Err(Error::TooFewPoints {
            metric: "spacing",
            required: 2,
            actual: approximate.len(),
        });
    }
    let d: Vec<f64> = approximate
        .iter()
        .enumerate()
        .map(|(i, p)| {
            approximate
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| p.distance(q))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mean_d = mean(&d);
    let var = d.iter().map(|x| (x - mean_d).powi(2)).sum::<f64>() / d.len() as f64;
    Ok(var.sqrt())
}

fn by_objectives(a: &&ObjectiveVector, b: &&ObjectiveVector) -> Ordering {
    a.values().partial_cmp(b.values()).unwrap_or(Ordering::Equal)
}

fn extremes(front: &[ObjectiveVector]) -> (&ObjectiveVector, &ObjectiveVector) {
    let first = front.iter().min_by(by_objectives).expect("non-empty");
    let last = front.iter().max_by(by_objectives).expect("non-empty");
    (first, last)
}

/// Spread (Delta): extreme-point gaps plus the deviation of the
/// approximate-to-reference distances. Returns 0 when every distance is 0.
pub fn spread(pair: &FrontPair<'_>) -> f64 {
    let (ref_first, ref_last) = extremes(pair.reference);
    let (app_first, app_last) = extremes(pair.approximate);
    let d_f = ref_first.distance(app_first);
    let d_l = ref_last.distance(app_last);
    let d: Vec<f64> = pair.approximate.iter().map(|p| nearest(p, pair.reference)).collect();
    let mean_d = mean(&d);
    let deviation: f64 = d.iter().map(|x| (x - mean_d).abs()).sum();
    let denominator = d_f + d_l + (d.len() as f64 - 1.0) * mean_d;
    if denominator <= 0.0 {
        return 0.0;
    }
    (d_f + d_l + deviation) / denominator
}
