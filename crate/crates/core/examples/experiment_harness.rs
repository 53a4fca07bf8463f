//! The batch pipeline the `gmocso` binary wraps: run a small experiment into
//! a temporary directory, compute metrics, export plot data and compare the
//! result against a second labelled configuration.

use gmocso::harness::{compare, compute_metrics, export_plot_data, run_experiment, CompareInput, ExperimentConfig};
use gmocso::problems::ProblemId;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = std::env::temp_dir().join(format!("gmocso-example-{}", std::process::id()));

    let mut config = ExperimentConfig::new(vec![ProblemId::Zdt1, ProblemId::Zdt2]);
    config.runs = 5;
    config.algorithm.max_iterations = 30;
    let base = root.join("default");
    let manifest = run_experiment(&config, &base, 4)?;
    println!("{} runs stored under {}", manifest.runs.len(), base.display());

    let metrics = compute_metrics(&base, None, None)?;
    for s in &metrics.summary {
        println!("  {} {:<8} mean {:.5} std {:.5}", s.problem, s.metric.to_string(), s.mean, s.std);
    }
    let plot = export_plot_data(&base, "ZDT1", None)?;
    println!("plot data: {} rows in {}", plot.combined_rows, plot.dir.display());

    config.label = "SMP5".into();
    config.algorithm.smp = 5;
    let variant = root.join("smp5");
    run_experiment(&config, &variant, 4)?;
    let variant_metrics = compute_metrics(&variant, None, None)?;

    let inputs = [
        CompareInput { label: None, path: metrics.metrics_path },
        CompareInput { label: None, path: variant_metrics.metrics_path },
    ];
    print!("{}", compare(&inputs, "GMOCSO", 0.05, false)?.render());
    std::fs::remove_dir_all(&root)?;
    Ok(())
}
