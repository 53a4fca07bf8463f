//! Scores a hand-made approximation of the ZDT1 front with rgd, spacing and
//! spread against the sampled analytic reference.

use gmocso::metrics::{rgd, spacing, spread, FrontPair};
use gmocso::problems::{reference_front, Problem, ProblemId};
use gmocso::ObjectiveVector;

fn main() -> gmocso::Result<()> {
    let reference = reference_front(&Problem::new(ProblemId::Zdt1), 1000)?;
    for (label, n, lift) in [("exact, 11 points", 11, 0.0), ("lifted by 0.05", 11, 0.05), ("3 points", 3, 0.0)] {
        let approx: Vec<ObjectiveVector> = (0..n)
            .map(|i| {
                let f1 = i as f64 / (n - 1) as f64;
                ObjectiveVector::from([f1, 1.0 - f1.sqrt() + lift])
            })
            .collect();
        let pair = FrontPair::new(reference.points(), &approx)?;
        println!(
            "{label:<18} rgd {:.5}  spacing {:.5}  spread {:.5}",
            rgd(&pair),
            spacing(&approx)?,
            spread(&pair)
        );
    }
    Ok(())
}
