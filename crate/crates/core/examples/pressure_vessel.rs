//! The pressure vessel design problem: cost versus total constraint
//! violation, with shell and head thicknesses on a 0.0625 grid.

use gmocso::optimizer::{run, GmocsoConfig};
use gmocso::problems::{vessel_constraints, Problem, ProblemId};

fn main() -> gmocso::Result<()> {
    let problem = Problem::new(ProblemId::PressureVessel);
    let x = [1.0, 1.0, 10.0, 10.0];
    let f = problem.evaluate(&x)?;
    println!("x = {x:?}: cost {:.3}, violation {:.2}, g = {:?}", f[0], f[1], vessel_constraints(&x));

    let result = run(&GmocsoConfig { seed: 11, ..GmocsoConfig::default() }, &problem)?;
    let feasible: Vec<usize> = (0..result.final_front.len())
        .filter(|&i| result.final_front[i][1] == 0.0)
        .collect();
    println!("{} archived designs, {} feasible", result.final_front.len(), feasible.len());
    if let Some(&best) = feasible.iter().min_by(|&&a, &&b| result.final_front[a][0].total_cmp(&result.final_front[b][0])) {
        let x = &result.final_positions[best];
        println!("cheapest feasible design: Ts = {}, Th = {}, R = {:.4}, L = {:.4}", x[0], x[1], x[2], x[3]);
        println!("cost {:.4}", result.final_front[best][0]);
    }
    Ok(())
}
