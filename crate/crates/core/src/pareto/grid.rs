use super::HasObjectives;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Per-objective bin indices of one hyper-box.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoxIndex(pub Vec<usize>);

/// Equal-width partition of the bounding box of a set of objective vectors.
///
/// Bounds are the exact per-objective min/max of the points the grid was
/// built from. A point on the upper bound lands in the last bin; a
/// degenerate dimension (min == max) puts everything in bin 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    lower: Vec<f64>,
    upper: Vec<f64>,
    bins_per_dim: usize,
    occupancy: BTreeMap<BoxIndex, usize>,
}

impl Grid {
    pub fn build<T: HasObjectives>(points: &[T], n_grid: usize) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyArchive)?;
        if n_grid == 0 {
            return Err(Error::InvalidConfig(vec!["n_grid must be positive".into()]));
        }
        let m = first.objectives().len();
        let mut lower = vec![f64::INFINITY; m];
        let mut upper = vec![f64::NEG_INFINITY; m];
        for p in points {
            let values = p.objectives();
            if values.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    actual: values.len(),
                });
            }
            for (j, &v) in values.iter().enumerate() {
                lower[j] = lower[j].min(v);
                upper[j] = upper[j].max(v);
            }
        }
        let mut grid = Grid {
            lower,
            upper,
            bins_per_dim: n_grid,
            occupancy: BTreeMap::new(),
        };
        for p in points {
            let idx = grid.locate(p.objectives());
            *grid.occupancy.entry(idx).or_insert(0) += 1;
        }
        Ok(grid)
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn bins_per_dim(&self) -> usize {
        self.bins_per_dim
    }

    /// Non-empty boxes and their member counts, ordered by box index.
    pub fn occupancy(&self) -> &BTreeMap<BoxIndex, usize> {
        &self.occupancy
    }

    pub fn total_occupancy(&self) -> usize {
        self.occupancy.values().sum()
    }

    /// Box containing `p`. Points outside the bounds clamp to the edge bins.
    pub fn locate(&self, p: &[f64]) -> BoxIndex {
        let last = self.bins_per_dim - 1;
        let idx = p
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&v, (&lo, &hi))| {
                let range = hi - lo;
                if range <= 0.0 {
                    return 0;
                }
                let scaled = (v - lo) / range * self.bins_per_dim as f64;
                if scaled.is_nan() || scaled <= 0.0 {
                    0
                } else {
                    (scaled.floor() as usize).min(last)
                }
            })
            .collect();
        BoxIndex(idx)
    }

    /// Members of `points` grouped by box, each list in input order.
    pub fn members_by_box<T: HasObjectives>(&self, points: &[T]) -> BTreeMap<BoxIndex, Vec<usize>> {
        let mut out: BTreeMap<BoxIndex, Vec<usize>> = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            out.entry(self.locate(p.objectives())).or_default().push(i);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pareto::ObjectiveVector;
    use proptest::prelude::*;

    fn pts(v: &[[f64; 2]]) -> Vec<ObjectiveVector> {
        v.iter().map(|p| ObjectiveVector::from(*p)).collect()
    }

    fn unit_grid() -> Grid {
        Grid::build(&pts(&[[0.0, 0.0], [1.0, 1.0]]), 10).unwrap()
    }

    #[test]
    fn build_two_corner_points() {
        let g = Grid::build(&pts(&[[0.0, 1.0], [1.0, 0.0]]), 10).unwrap();
        assert_eq!(g.lower(), &[0.0, 0.0]);
        assert_eq!(g.upper(), &[1.0, 1.0]);
        let expected: BTreeMap<_, _> =
            [(BoxIndex(vec![0, 9]), 1), (BoxIndex(vec![9, 0]), 1)].into_iter().collect();
        assert_eq!(g.occupancy(), &expected);
    }

    #[test]
    fn build_single_member_is_degenerate() {
        let g = Grid::build(&pts(&[[0.3, 0.7]]), 10).unwrap();
        assert_eq!(g.lower(), g.upper());
        assert_eq!(g.occupancy().get(&BoxIndex(vec![0, 0])), Some(&1));
        assert_eq!(g.locate(&[5.0, -5.0]), BoxIndex(vec![0, 0]));
    }

    #[test]
    fn build_three_points() {
        let p = pts(&[[0.0, 0.0], [0.05, 0.95], [1.0, 1.0]]);
        let g = Grid::build(&p, 10).unwrap();
        assert_eq!(g.locate(&p[1]), BoxIndex(vec![0, 9]));
    }

    #[test]
    fn build_empty_is_error() {
        assert_eq!(
            Grid::build::<ObjectiveVector>(&[], 10),
            Err(Error::EmptyArchive)
        );
    }

    #[test]
    fn locate_examples() {
        let g = unit_grid();
        assert_eq!(g.locate(&[1.0, 1.0]), BoxIndex(vec![9, 9]));
        assert_eq!(g.locate(&[0.31, 0.49]), BoxIndex(vec![3, 4]));
        assert_eq!(g.locate(&[-3.0, 7.0]), BoxIndex(vec![0, 9]));
    }

    proptest! {
        #[test]
        fn occupancy_accounts_for_every_point(
            raw in prop::collection::vec((0.0..10.0f64, 0.0..10.0f64), 1..60),
            n_grid in 1usize..15,
        ) {
            let p: Vec<ObjectiveVector> = raw.iter().map(|&(a, b)| ObjectiveVector::from([a, b])).collect();
            let g = Grid::build(&p, n_grid).unwrap();
            prop_assert_eq!(g.total_occupancy(), p.len());
            for q in &p {
                let idx = g.locate(q);
                prop_assert!(idx.0.iter().all(|&b| b < n_grid));
                prop_assert!(g.occupancy().contains_key(&idx));
            }
        }
    }
}
