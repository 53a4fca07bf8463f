//! The external archive on its own: dominance filtering, grid occupancy,
//! crowding-based truncation and sparse-box leader selection.

use gmocso::pareto::{dominance, Archive, InsertOutcome, Solution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gmocso::Result<()> {
    println!("(1,2) vs (2,3): {:?}", dominance(&[1.0, 2.0], &[2.0, 3.0])?);
    println!("(1,3) vs (3,1): {:?}", dominance(&[1.0, 3.0], &[3.0, 1.0])?);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut archive = Archive::new(8);
    // A dense cluster near f1 = 0 and a handful of spread-out points.
    let mut points: Vec<[f64; 2]> = (0..10).map(|i| [i as f64 * 0.005, 1.0 - i as f64 * 0.005]).collect();
    points.extend([[0.3, 0.5], [0.6, 0.25], [0.9, 0.05], [0.5, 0.9]]);
    for p in points {
        let outcome = archive.insert(Solution::from_objectives(p));
        if let InsertOutcome::Rejected = outcome {
            println!("rejected {p:?}");
        }
    }
    println!("archive holds {} points before truncation", archive.len());

    archive.truncate(4, &mut rng);
    println!("after truncation to {}:", archive.capacity());
    let grid = archive.grid(4)?;
    for (b, n) in grid.occupancy() {
        println!("  box {:?}: {n}", b.0);
    }
    let leader = archive.select_leader(&grid, &mut rng)?;
    println!("leader from a least-crowded box: {:?}", leader.objectives.values());
    Ok(())
}
