use clap::{Parser, Subcommand};
use gmocso::harness::{
    compare, compute_metrics, export_plot_data, run_experiment, write_reference, CompareInput,
    ExperimentConfig, HarnessError, HarnessResult, ReferenceSource,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gmocso", version, about = "Grid-based multi-objective cat swarm optimization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every configured (problem, seed) pair and store the fronts.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compute rgd, spacing and spread for every stored run.
    Metrics {
        #[arg(long)]
        results: PathBuf,
        /// analytic, pooled or file:PATH. Defaults to the configured source.
        #[arg(long)]
        reference: Option<ReferenceSource>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank algorithms and test the baseline against the others.
    Compare {
        /// Comma-separated metrics files, each PATH or LABEL=PATH.
        #[arg(long, value_delimiter = ',', required = true)]
        inputs: Vec<CompareInput>,
        #[arg(long)]
        baseline: String,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        /// Also rank elapsed time.
        #[arg(long)]
        with_elapsed: bool,
        /// Directory for ranks.csv and pvalues.csv.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export reference and per-run fronts as plotting-ready CSV.
    Plotdata {
        #[arg(long)]
        results: PathBuf,
        #[arg(long)]
        problem: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a sampled analytic Pareto front.
    Reference {
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn execute(command: Command) -> HarnessResult<()> {
    match command {
        Command::Run { config, out, jobs } => {
            let cfg = ExperimentConfig::load(&config)?;
            let dir = out
                .or_else(|| cfg.output_dir.clone())
                .ok_or_else(|| HarnessError::Usage("no output directory: pass --out or set output_dir".into()))?;
            let manifest = run_experiment(&cfg, &dir, jobs)?;
            println!("{} runs written to {}", manifest.runs.len(), dir.display());
        }
        Command::Metrics { results, reference, out } => {
            let m = compute_metrics(&results, reference.as_ref(), out.as_deref())?;
            println!("problem,algorithm,metric,mean,std,n");
            for s in &m.summary {
                println!("{},{},{},{:e},{:e},{}", s.problem, s.algorithm, s.metric, s.mean, s.std, s.n);
            }
            println!("per-run metrics: {}", m.metrics_path.display());
        }
        Command::Compare { inputs, baseline, alpha, with_elapsed, out } => {
            let report = compare(&inputs, &baseline, alpha, with_elapsed)?;
            print!("{}", report.render());
            if let Some(dir) = out {
                report.write_csv(&dir)?;
            }
        }
        Command::Plotdata { results, problem, out } => {
            let p = export_plot_data(&results, &problem, out.as_deref())?;
            println!("{} rows written to {}", p.combined_rows, p.dir.display());
        }
        Command::Reference { problem, points, out } => {
            let front = write_reference(&problem, points, &out)?;
            println!("{} points written to {}", front.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
