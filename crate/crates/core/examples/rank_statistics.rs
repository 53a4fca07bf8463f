//! Rank aggregation and rank-sum tests on synthetic per-run results for
//! three algorithms over two problems.

use gmocso::stats::{friedman_ranks, significance_report, summarize, MeanRow, Metric, MetricSample};
use std::collections::BTreeMap;

fn main() -> gmocso::Result<()> {
    // Per-run rgd values; lower is better.
    let data = [
        ("A", "P1", [0.010, 0.012, 0.011, 0.009, 0.013, 0.010]),
        ("B", "P1", [0.020, 0.018, 0.022, 0.019, 0.021, 0.020]),
        ("C", "P1", [0.011, 0.010, 0.014, 0.012, 0.009, 0.013]),
        ("A", "P2", [0.30, 0.28, 0.35, 0.31, 0.29, 0.33]),
        ("B", "P2", [0.10, 0.12, 0.09, 0.11, 0.10, 0.13]),
        ("C", "P2", [0.50, 0.48, 0.52, 0.47, 0.55, 0.51]),
    ];
    let samples: Vec<MetricSample> = data
        .iter()
        .map(|(a, p, v)| MetricSample {
            algorithm: a.to_string(),
            problem: p.to_string(),
            metric: Metric::Rgd,
            values: v.to_vec(),
        })
        .collect();

    let mut rows = Vec::new();
    for problem in ["P1", "P2"] {
        let mut means = BTreeMap::new();
        for s in samples.iter().filter(|s| s.problem == problem) {
            means.insert(s.algorithm.clone(), summarize(&s.values)?.mean);
        }
        rows.push(MeanRow { problem: problem.into(), metric: Metric::Rgd, means });
    }
    let table = friedman_ranks(&rows)?;
    for r in &table.rows {
        println!("{} {}: {:?}", r.problem, r.metric, r.ranks);
    }
    println!("overall ordering: {:?}", table.ordering());
    println!("friedman chi-square {:.3}, p = {:.4}", table.friedman.chi_square, table.friedman.p_value);

    let report = significance_report(&samples, "A", 0.05)?;
    for e in &report.entries {
        println!("{} {} vs {}: p = {:.5}{}", e.problem, e.baseline, e.other, e.p_value, if e.significant { " *" } else { "" });
    }
    Ok(())
}
