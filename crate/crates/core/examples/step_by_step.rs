//! Drives the optimizer one iteration at a time and watches the archive
//! and hyper-grid develop.

use gmocso::optimizer::{initialize, iterate, GmocsoConfig};
use gmocso::problems::{Problem, ProblemId};

fn main() -> gmocso::Result<()> {
    let problem = Problem::new(ProblemId::Zdt3);
    let config = GmocsoConfig { population_size: 50, seed: 3, ..GmocsoConfig::default() };
    let mut state = initialize(&config, &problem)?;

    println!("iter  archive  boxes  densest  f1-range");
    for _ in 0..30 {
        iterate(&mut state, &config, &problem)?;
        if state.iteration % 5 == 0 {
            let occ = state.grid.occupancy();
            println!(
                "{:>4}  {:>7}  {:>5}  {:>7}  [{:.3}, {:.3}]",
                state.iteration,
                state.archive.len(),
                occ.len(),
                occ.values().max().unwrap_or(&0),
                state.grid.lower()[0],
                state.grid.upper()[0]
            );
        }
    }
    Ok(())
}
