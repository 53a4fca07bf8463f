//! Samples the analytic Pareto fronts of the ZDT problems and shows the
//! disconnected pieces of ZDT3.

use gmocso::problems::{reference_front, Problem, ProblemId};

fn main() -> gmocso::Result<()> {
    for id in ProblemId::ALL {
        match reference_front(&Problem::new(id), 1000) {
            Ok(front) => {
                let pts = front.points();
                println!("{id}: {} points, f1 in [{:.4}, {:.4}]", pts.len(), pts[0][0], pts[pts.len() - 1][0]);
            }
            Err(e) => println!("{id}: {e}"),
        }
    }
    let zdt3 = reference_front(&Problem::new(ProblemId::Zdt3), 1000)?;
    let pts = zdt3.points();
    let mut start = pts[0][0];
    print!("ZDT3 segments:");
    for w in pts.windows(2) {
        if w[1][0] - w[0][0] > 0.01 {
            print!(" [{start:.4}, {:.4}]", w[0][0]);
            start = w[1][0];
        }
    }
    println!(" [{start:.4}, {:.4}]", pts[pts.len() - 1][0]);
    Ok(())
}
