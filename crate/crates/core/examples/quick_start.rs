//! Optimizes ZDT1 once at the default parameters and prints the first few
//! points of the archived front.

use gmocso::optimizer::{run, GmocsoConfig};
use gmocso::problems::{Problem, ProblemId};

fn main() -> gmocso::Result<()> {
    let problem = Problem::new(ProblemId::Zdt1);
    let config = GmocsoConfig { seed: 42, ..GmocsoConfig::default() };
    let result = run(&config, &problem)?;

    println!(
        "{} non-dominated points after {} iterations ({:.3}s)",
        result.final_front.len(),
        result.iterations_completed,
        result.elapsed_seconds
    );
    let mut front = result.final_front.clone();
    front.sort_by(|a, b| a[0].total_cmp(&b[0]));
    for p in front.iter().step_by((front.len() / 10).max(1)) {
        println!("  f1 = {:.4}  f2 = {:.4}", p[0], p[1]);
    }
    Ok(())
}
