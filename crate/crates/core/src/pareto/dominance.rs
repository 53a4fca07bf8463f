use super::{ObjectiveVector, Solution};
use crate::error::{Error, Result};

/// Outcome of comparing two objective vectors under minimisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dominance {
    FirstDominates,
    SecondDominates,
    Incomparable,
    Equal,
}

/// Anything that carries an objective vector.
pub trait HasObjectives {
    fn objectives(&self) -> &ObjectiveVector;
}

impl HasObjectives for ObjectiveVector {
    fn objectives(&self) -> &ObjectiveVector {
        self
    }
}

impl HasObjectives for Solution {
    fn objectives(&self) -> &ObjectiveVector {
        &self.objectives
    }
}

/// Compares `a` against `b`.
///
/// `a` dominates `b` when it is no worse in every objective and strictly
/// better in at least one.
pub fn dominance(a: &[f64], b: &[f64]) -> Result<Dominance> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(compare(a, b))
}

pub(crate) fn compare(a: &[f64], b: &[f64]) -> Dominance {
    let mut a_better = false;
    let mut b_better = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            a_better = true;
        } else if y < x {
            b_better = true;
        }
        if a_better && b_better {
            return Dominance::Incomparable;
        }
    }
    match (a_better, b_better) {
        (true, false) => Dominance::FirstDominates,
        (false, true) => Dominance::SecondDominates,
        (false, false) => Dominance::Equal,
        (true, true) => Dominance::Incomparable,
    }
}

pub(crate) fn dominates(a: &[f64], b: &[f64]) -> bool {
    compare(a, b) == Dominance::FirstDominates
}

/// Indices of the members not dominated by any other member, in input order.
/// Members with equal objective vectors do not eliminate each other.
pub fn non_dominated_indices<T: HasObjectives>(points: &[T]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            let p = points[i].objectives();
            !points
                .iter()
                .enumerate()
                .any(|(j, q)| j != i && dominates(q.objectives(), p))
        })
        .collect()
}

/// The non-dominated subset of `points`, preserving input order.
pub fn non_dominated_filter<T: HasObjectives + Clone>(points: &[T]) -> Vec<T> {
    non_dominated_indices(points)
        .into_iter()
        .map(|i| points[i].clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ov(v: &[f64]) -> ObjectiveVector {
        ObjectiveVector::new(v.to_vec())
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(
            dominance(&[0.5, 0.5], &[1.0, 0.5]).unwrap(),
            Dominance::FirstDominates
        );
        assert_eq!(dominance(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), Dominance::Equal);
        assert_eq!(
            dominance(&[0.0, 1.0], &[1.0, 0.0]).unwrap(),
            Dominance::Incomparable
        );
        assert_eq!(
            dominance(&[1.0, 0.5], &[0.5, 0.5]).unwrap(),
            Dominance::SecondDominates
        );
    }

    #[test]
    fn dominance_length_mismatch() {
        assert_eq!(
            dominance(&[0.0, 1.0], &[0.0, 1.0, 2.0]),
            Err(Error::DimensionMismatch {
                expected: 2,
                actual: 3
            })
        );
    }

    #[test]
    fn filter_examples() {
        let pts = vec![ov(&[1.0, 1.0]), ov(&[2.0, 2.0]), ov(&[0.0, 3.0])];
        assert_eq!(
            non_dominated_filter(&pts),
            vec![ov(&[1.0, 1.0]), ov(&[0.0, 3.0])]
        );
        assert_eq!(non_dominated_filter(&[ov(&[5.0, 5.0])]), vec![ov(&[5.0, 5.0])]);
        let dup = vec![ov(&[0.0, 0.0]), ov(&[0.0, 0.0])];
        assert_eq!(non_dominated_filter(&dup), dup);
        assert!(non_dominated_filter::<ObjectiveVector>(&[]).is_empty());
    }

    fn point() -> impl Strategy<Value = Vec<f64>> {
        // Coarse values so that ties and equal vectors actually occur.
        prop::collection::vec((0u8..6).prop_map(f64::from), 2..=3)
    }

    fn points3() -> impl Strategy<Value = Vec<Vec<f64>>> {
        prop::collection::vec(prop::collection::vec((0u8..6).prop_map(f64::from), 3), 0..50)
    }

    // Independent pairwise oracle written directly from the definition.
    fn brute_force_survivors(pts: &[Vec<f64>]) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..pts.len() {
            let mut dominated = false;
            for j in 0..pts.len() {
                let all_le = pts[j].iter().zip(&pts[i]).all(|(a, b)| a <= b);
                let one_lt = pts[j].iter().zip(&pts[i]).any(|(a, b)| a < b);
                if all_le && one_lt {
                    dominated = true;
                }
            }
            if !dominated {
                out.push(i);
            }
        }
        out
    }

    proptest! {
        #[test]
        fn antisymmetric(a in point(), b in point()) {
            prop_assume!(a.len() == b.len());
            let ab = dominance(&a, &b).unwrap();
            let ba = dominance(&b, &a).unwrap();
            prop_assert_eq!(ab == Dominance::FirstDominates, ba == Dominance::SecondDominates);
            prop_assert_eq!(ab == Dominance::Equal, ba == Dominance::Equal);
        }

        #[test]
        fn transitive(a in prop::collection::vec(0.0..1.0f64, 2), db in prop::collection::vec(0.0..1.0f64, 2), dc in prop::collection::vec(0.0..1.0f64, 2)) {
            let b: Vec<f64> = a.iter().zip(&db).map(|(x, d)| x + d).collect();
            let c: Vec<f64> = b.iter().zip(&dc).map(|(x, d)| x + d).collect();
            if dominates(&a, &b) && dominates(&b, &c) {
                prop_assert!(dominates(&a, &c));
            }
        }

        #[test]
        fn filter_matches_brute_force(pts in points3()) {
            let vecs: Vec<ObjectiveVector> = pts.iter().map(|p| ov(p)).collect();
            prop_assert_eq!(non_dominated_indices(&vecs), brute_force_survivors(&pts));
        }

        #[test]
        fn filter_idempotent(pts in points3()) {
            let vecs: Vec<ObjectiveVector> = pts.iter().map(|p| ov(p)).collect();
            let once = non_dominated_filter(&vecs);
            prop_assert_eq!(non_dominated_filter(&once), once.clone());
        }
    }
}
