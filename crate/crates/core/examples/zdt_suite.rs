//! Repeats the ZDT benchmark protocol: 30 seeded runs per problem at the
//! default parameters, reporting mean rgd, spacing and spread.
//!
//! ```text
//! cargo run --release --example zdt_suite [RUNS]
//! ```

use gmocso::metrics::{rgd, spacing, spread, FrontPair};
use gmocso::optimizer::{run, GmocsoConfig};
use gmocso::problems::{reference_front, Problem, ProblemId, DEFAULT_REFERENCE_POINTS};
use gmocso::stats::summarize;
use rayon::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let runs: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(30);
    println!("{:<6}{:>12}{:>12}{:>12}{:>12}", "", "rgd", "spacing", "spread", "seconds");
    for id in ProblemId::ALL.into_iter().filter(|p| p.is_zdt()) {
        let problem = Problem::new(id);
        let reference = reference_front(&problem, DEFAULT_REFERENCE_POINTS)?;
        let rows: Vec<[f64; 4]> = (0..runs)
            .into_par_iter()
            .map(|seed| {
                let config = GmocsoConfig { seed, ..GmocsoConfig::default() };
                let result = run(&config, &problem).expect("default config is valid");
                let pair = FrontPair::new(reference.points(), &result.final_front).expect("non-empty");
                [
                    rgd(&pair),
                    spacing(&result.final_front).unwrap_or(0.0),
                    spread(&pair),
                    result.elapsed_seconds,
                ]
            })
            .collect();
        let mean = |k: usize| summarize(&rows.iter().map(|r| r[k]).collect::<Vec<_>>()).map(|s| s.mean);
        println!("{:<6}{:>12.5}{:>12.5}{:>12.5}{:>12.3}", id.to_string(), mean(0)?, mean(1)?, mean(2)?, mean(3)?);
    }
    Ok(())
}
