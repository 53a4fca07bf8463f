use super::config::{ExperimentConfig, ReferenceSource};
use super::csvio::{self, format_real};
use super::store::{self, Manifest, RunRecord, ELAPSED_FILE};
use super::{HarnessError, HarnessResult};
use crate::metrics::{rgd, spacing, spread, FrontPair};
use crate::optimizer;
use crate::pareto::ObjectiveVector;
use crate::problems::{reference_front, Problem, ProblemId, ReferenceFront};
use crate::stats::{
    friedman_ranks, significance_report, summarize, MeanRow, Metric, MetricSample, RankTable,
    SignificanceReport,
};
use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const METRICS_FILE: &str = "metrics.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
const METRICS_HEADER: &str = "problem,algorithm,run,seed,rgd,spacing,spread,elapsed_seconds";

/// Runs every (problem, run) pair of `config` and stores fronts, positions,
/// elapsed times and a manifest under `out_dir`. Runs are spread over
/// `jobs` worker threads; each owns its generator and output files.
pub fn run_experiment(config: &ExperimentConfig, out_dir: &Path, jobs: usize) -> HarnessResult<Manifest> {
    config.validate()?;
    std::fs::create_dir_all(out_dir).map_err(|e| HarnessError::io(out_dir, e))?;
    let tasks: Vec<(ProblemId, usize)> = config
        .problems
        .iter()
        .flat_map(|&p| (0..config.runs).map(move |r| (p, r)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| HarnessError::Usage(format!("cannot start worker pool: {e}")))?;

    let records: Vec<RunRecord> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(id, run)| run_one(config, out_dir, id, run))
            .collect::<HarnessResult<Vec<_>>>()
    })?;

    let mut elapsed = String::from("problem,run,seed,elapsed_seconds\n");
    for r in &records {
        writeln!(elapsed, "{},{},{},{}", r.problem, r.run, r.seed, format_real(r.elapsed_seconds)).unwrap();
    }
    csvio::write_file(&out_dir.join(ELAPSED_FILE), elapsed.as_bytes())?;

    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.to_json(),
        seeds: config.seeds(),
        runs: records,
    };
    manifest.write(out_dir)?;
    Ok(manifest)
}

fn run_one(config: &ExperimentConfig, out_dir: &Path, id: ProblemId, run: usize) -> HarnessResult<RunRecord> {
    let problem = Problem::new(id);
    let cfg = config.run_config(run);
    let result = optimizer::run(&cfg, &problem)?;
    info!(
        "{id} run {run} (seed {}): {} points in {:.3}s",
        cfg.seed,
        result.final_front.len(),
        result.elapsed_seconds
    );
    let front_rel = store::front_path(id, run);
    let positions_rel = store::positions_path(id, run);
    let front = csvio::encode_front(&result.final_front);
    let positions = csvio::encode_positions(&result.final_positions);
    csvio::write_file(&out_dir.join(&front_rel), front.as_bytes())?;
    csvio::write_file(&out_dir.join(&positions_rel), positions.as_bytes())?;
    Ok(RunRecord {
        problem: id,
        run,
        seed: cfg.seed,
        front_sha256: store::sha256_hex(front.as_bytes()),
        front: front_rel,
        front_size: result.final_front.len(),
        positions_sha256: store::sha256_hex(positions.as_bytes()),
        positions: positions_rel,
        iterations: result.iterations_completed,
        elapsed_seconds: result.elapsed_seconds,
    })
}

fn resolve_reference(
    results_dir: &Path,
    manifest: &Manifest,
    config: &ExperimentConfig,
    id: ProblemId,
    source: &ReferenceSource,
) -> HarnessResult<ReferenceFront> {
    match source {
        ReferenceSource::Analytic => reference_front(&Problem::new(id), config.reference_points).map_err(|e| match e {
            crate::Error::NoAnalyticFront(_) => HarnessError::MissingReference(format!(
                "{id} has no analytic reference front; pass --reference pooled or --reference file:PATH"
            )),
            other => other.into(),
        }),
        ReferenceSource::File(path) => {
            let points = csvio::read_front(path)?;
            Ok(ReferenceFront::from_points(points)?)
        }
        ReferenceSource::Pooled => {
            let runs: Vec<&RunRecord> = manifest.runs_for(id).collect();
            if runs.len() < 2 {
                return Err(HarnessError::MissingReference(format!(
                    "pooled reference for {id} needs at least 2 runs, found {}; pass --reference file:PATH",
                    runs.len()
                )));
            }
            let mut union = Vec::new();
            for r in runs {
                union.extend(store::read_run_front(results_dir, r)?);
            }
            Ok(ReferenceFront::from_points(union)?)
        }
    }
}

/// One line of a metrics CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub problem: String,
    pub algorithm: String,
    pub run: usize,
    pub seed: Option<u64>,
    pub rgd: Option<f64>,
    /// Empty when the front has a single point.
    pub spacing: Option<f64>,
    pub spread: Option<f64>,
    pub elapsed_seconds: Option<f64>,
}

impl MetricsRow {
    pub fn value(&self, metric: Metric) -> Option<f64> {
        match metric {
            Metric::Rgd => self.rgd,
            Metric::Spacing => self.spacing,
            Metric::Spread => self.spread,
            Metric::Elapsed => self.elapsed_seconds,
        }
    }
}

fn opt_real(v: Option<f64>) -> String {
    v.map(format_real).unwrap_or_default()
}

pub fn encode_metrics(rows: &[MetricsRow]) -> String {
    let mut out = format!("{METRICS_HEADER}\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.problem,
            r.algorithm,
            r.run,
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            opt_real(r.rgd),
            opt_real(r.spacing),
            opt_real(r.spread),
            opt_real(r.elapsed_seconds)
        )
        .unwrap();
    }
    out
}

pub fn decode_metrics(text: &str, source: &str) -> HarnessResult<Vec<MetricsRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| HarnessError::Usage(format!("{source}: {e}")))?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if header != METRICS_HEADER {
        return Err(HarnessError::Usage(format!(
            "{source}: expected header `{METRICS_HEADER}`, found `{header}`"
        )));
    }
    reader
        .deserialize()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| HarnessError::Usage(format!("{source}: row {}: {e}", i + 2))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub problem: String,
    pub algorithm: String,
    pub metric: Metric,
    pub mean: f64,
    pub std: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsOutput {
    pub rows: Vec<MetricsRow>,
    pub summary: Vec<SummaryRow>,
    pub metrics_path: PathBuf,
    pub summary_path: PathBuf,
}

/// Per-run rgd, spacing and spread for every stored front, plus a mean/std
/// summary per problem. `reference` overrides the configured source for
/// every problem. Writes `metrics.csv` (or `out`) and `summary.csv` next
/// to it.
pub fn compute_metrics(results_dir: &Path, reference: Option<&ReferenceSource>, out: Option<&Path>) -> HarnessResult<MetricsOutput> {
    let manifest = Manifest::load(results_dir)?;
    let config = manifest.experiment_config()?;
    let mut rows = Vec::new();
    for id in manifest.problems() {
        let source = reference.cloned().unwrap_or_else(|| config.reference_for(id));
        let front_ref = resolve_reference(results_dir, &manifest, &config, id, &source)?;
        for record in manifest.runs_for(id) {
            let front = store::read_run_front(results_dir, record)?;
            let pair = FrontPair::new(front_ref.points(), &front)?;
            rows.push(MetricsRow {
                problem: id.to_string(),
                algorithm: config.label.clone(),
                run: record.run,
                seed: Some(record.seed),
                rgd: Some(rgd(&pair)),
                spacing: spacing(&front).ok(),
                spread: Some(spread(&pair)),
                elapsed_seconds: Some(record.elapsed_seconds),
            });
        }
    }
    let summary = summarize_rows(&rows);

    let metrics_path = out.map(Path::to_path_buf).unwrap_or_else(|| results_dir.join(METRICS_FILE));
    let summary_path = metrics_path.with_file_name(SUMMARY_FILE);
    csvio::write_file(&metrics_path, encode_metrics(&rows).as_bytes())?;
    let mut text = String::from("problem,algorithm,metric,mean,std,n\n");
    for s in &summary {
        writeln!(text, "{},{},{},{},{},{}", s.problem, s.algorithm, s.metric, format_real(s.mean), format_real(s.std), s.n).unwrap();
    }
    csvio::write_file(&summary_path, text.as_bytes())?;
    Ok(MetricsOutput {
        rows,
        summary,
        metrics_path,
        summary_path,
    })
}

fn summarize_rows(rows: &[MetricsRow]) -> Vec<SummaryRow> {
    let mut keys: Vec<(String, String)> = Vec::new();
    for r in rows {
        let k = (r.problem.clone(), r.algorithm.clone());
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    let mut out = Vec::new();
    for (problem, algorithm) in keys {
        for metric in [Metric::Rgd, Metric::Spacing, Metric::Spread, Metric::Elapsed] {
            let values: Vec<f64> = rows
                .iter()
                .filter(|r| r.problem == problem && r.algorithm == algorithm)
                .filter_map(|r| r.value(metric))
                .collect();
            if let Ok(s) = summarize(&values) {
                out.push(SummaryRow {
                    problem: problem.clone(),
                    algorithm: algorithm.clone(),
                    metric,
                    mean: s.mean,
                    std: s.std,
                    n: s.n,
                });
            }
        }
    }
    out
}

/// A metrics file to compare, optionally relabelled (`label=path`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareInput {
    pub label: Option<String>,
    pub path: PathBuf,
}

impl std::str::FromStr for CompareInput {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once('=') {
            Some((label, path)) if !label.is_empty() && !path.is_empty() => Ok(CompareInput {
                label: Some(label.to_string()),
                path: PathBuf::from(path),
            }),
            Some(_) => Err(format!("invalid input `{s}` (expected LABEL=PATH or PATH)")),
            None => Ok(CompareInput {
                label: None,
                path: PathBuf::from(s),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub ranks: RankTable,
    pub significance: SignificanceReport,
    pub warnings: Vec<String>,
}

impl CompareReport {
    pub fn render(&self) -> String {
        let algs = &self.ranks.algorithms;
        let mut out = String::new();
        writeln!(out, "Ranking (1 = best)").unwrap();
        writeln!(out, "{:<16}{:<10}{}", "problem", "metric", pad_all(algs)).unwrap();
        for r in &self.ranks.rows {
            let cells: Vec<String> = algs.iter().map(|a| format_real(r.ranks[a])).collect();
            writeln!(out, "{:<16}{:<10}{}", r.problem, r.metric, pad_all(&cells)).unwrap();
        }
        for m in &self.ranks.per_metric {
            let sub: Vec<String> = algs.iter().map(|a| format_real(m.subtotal[a])).collect();
            let rank: Vec<String> = algs.iter().map(|a| format!("{:.6}", m.ranking[a])).collect();
            writeln!(out, "{:<26}{}", format!("{} subtotal", m.metric), pad_all(&sub)).unwrap();
            writeln!(out, "{:<26}{}", format!("{} ranking", m.metric), pad_all(&rank)).unwrap();
        }
        let total: Vec<String> = algs.iter().map(|a| format_real(self.ranks.total[a])).collect();
        let overall: Vec<String> = algs.iter().map(|a| format!("{:.6}", self.ranks.overall[a])).collect();
        writeln!(out, "{:<26}{}", "total", pad_all(&total)).unwrap();
        writeln!(out, "{:<26}{}", "overall ranking", pad_all(&overall)).unwrap();
        let f = &self.ranks.friedman;
        writeln!(
            out,
            "Friedman chi-square {:.6} (df {}), p = {:.6e}",
            f.chi_square, f.degrees_of_freedom, f.p_value
        )
        .unwrap();
        writeln!(out).unwrap();
        writeln!(out, "Wilcoxon rank-sum p-values (alpha = {})", self.significance.alpha).unwrap();
        for e in &self.significance.entries {
            writeln!(
                out,
                "{:<16}{:<10}{} vs {:<12}p = {:.6e}{}",
                e.problem,
                e.metric,
                e.baseline,
                e.other,
                e.p_value,
                if e.significant { "  *" } else { "" }
            )
            .unwrap();
        }
        for w in self.warnings.iter().chain(&self.significance.warnings) {
            writeln!(out, "warning: {w}").unwrap();
        }
        out
    }

    /// Writes `ranks.csv` and `pvalues.csv` into `dir`.
    pub fn write_csv(&self, dir: &Path) -> HarnessResult<()> {
        let algs = &self.ranks.algorithms;
        let mut ranks = format!("problem,metric,{}\n", algs.join(","));
        for r in &self.ranks.rows {
            let cells: Vec<String> = algs.iter().map(|a| format_real(r.ranks[a])).collect();
            writeln!(ranks, "{},{},{}", r.problem, r.metric, cells.join(",")).unwrap();
        }
        let overall: Vec<String> = algs.iter().map(|a| format_real(self.ranks.overall[a])).collect();
        writeln!(ranks, "overall,all,{}", overall.join(",")).unwrap();
        csvio::write_file(&dir.join("ranks.csv"), ranks.as_bytes())?;

        let mut p = String::from("problem,metric,baseline,other,p_value,significant\n");
        for e in &self.significance.entries {
            writeln!(p, "{},{},{},{},{},{}", e.problem, e.metric, e.baseline, e.other, format_real(e.p_value), e.significant).unwrap();
        }
        csvio::write_file(&dir.join("pvalues.csv"), p.as_bytes())
    }
}

fn pad_all(cells: &[String]) -> String {
    cells.iter().map(|c| format!("{c:<14}")).collect::<String>()
}

/// Rank table over per-algorithm means plus baseline-versus-others rank-sum
/// tests over the per-run values.
pub fn compare(inputs: &[CompareInput], baseline: &str, alpha: f64, with_elapsed: bool) -> HarnessResult<CompareReport> {
    if inputs.len() < 2 {
        return Err(HarnessError::Usage("compare needs at least two metrics files".into()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(HarnessError::Usage(format!("alpha must be in (0, 1), got {alpha}")));
    }
    // algorithm -> problem -> rows
    let mut by_alg: BTreeMap<String, BTreeMap<String, Vec<MetricsRow>>> = BTreeMap::new();
    let mut problem_order: Vec<String> = Vec::new();
    let mut owner: BTreeMap<String, PathBuf> = BTreeMap::new();
    for input in inputs {
        let text = csvio::read_file(&input.path)?;
        let rows = decode_metrics(&text, &input.path.display().to_string())?;
        for mut row in rows {
            if let Some(label) = &input.label {
                row.algorithm = label.clone();
            }
            match owner.get(&row.algorithm) {
                Some(p) if p != &input.path => {
                    return Err(HarnessError::Usage(format!(
                        "algorithm `{}` appears in both {} and {}; relabel with LABEL=PATH",
                        row.algorithm,
                        p.display(),
                        input.path.display()
                    )))
                }
                _ => {
                    owner.insert(row.algorithm.clone(), input.path.clone());
                }
            }
            if !problem_order.contains(&row.problem) {
                problem_order.push(row.problem.clone());
            }
            by_alg
                .entry(row.algorithm.clone())
                .or_default()
                .entry(row.problem.clone())
                .or_default()
                .push(row);
        }
    }
    if by_alg.len() < 2 {
        return Err(HarnessError::Usage(format!(
            "need at least two algorithms, found {:?}",
            by_alg.keys().collect::<Vec<_>>()
        )));
    }
    if !by_alg.contains_key(baseline) {
        return Err(HarnessError::Usage(format!(
            "baseline `{baseline}` not among {:?}",
            by_alg.keys().collect::<Vec<_>>()
        )));
    }

    let problem_sets: BTreeMap<&String, BTreeSet<&String>> =
        by_alg.iter().map(|(a, p)| (a, p.keys().collect())).collect();
    let common: BTreeSet<&String> = problem_sets
        .values()
        .skip(1)
        .fold(problem_sets.values().next().cloned().unwrap_or_default(), |acc, s| {
            acc.intersection(s).copied().collect()
        });
    if common.is_empty() {
        let listing: Vec<String> = problem_sets
            .iter()
            .map(|(a, s)| format!("{a}: {:?}", s.iter().collect::<Vec<_>>()))
            .collect();
        return Err(HarnessError::Usage(format!(
            "no problem is shared by all inputs ({})",
            listing.join("; ")
        )));
    }
    let mut warnings = Vec::new();
    for (a, s) in &problem_sets {
        for p in s.iter().filter(|p| !common.contains(*p)) {
            warnings.push(format!("{a}/{p}: problem not shared by all inputs, skipped"));
        }
    }

    let mut metrics = Metric::QUALITY.to_vec();
    if with_elapsed {
        metrics.push(Metric::Elapsed);
    }
    let mut mean_rows = Vec::new();
    let mut samples = Vec::new();
    for problem in problem_order.iter().filter(|p| common.contains(p)) {
        for &metric in &metrics {
            let mut means = BTreeMap::new();
            for (alg, problems) in &by_alg {
                let values: Vec<f64> = problems[problem].iter().filter_map(|r| r.value(metric)).collect();
                if let Ok(s) = summarize(&values) {
                    means.insert(alg.clone(), s.mean);
                    samples.push(MetricSample {
                        algorithm: alg.clone(),
                        problem: problem.clone(),
                        metric,
                        values,
                    });
                }
            }
            if means.len() == by_alg.len() {
                mean_rows.push(MeanRow {
                    problem: problem.clone(),
                    metric,
                    means,
                });
            } else {
                warnings.push(format!("{problem}/{metric}: values missing for some algorithms, not ranked"));
            }
        }
    }
    for w in &warnings {
        warn!("{w}");
    }
    let ranks = friedman_ranks(&mean_rows)?;
    let significance = significance_report(&samples, baseline, alpha)?;
    Ok(CompareReport {
        ranks,
        significance,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotDataOutput {
    pub dir: PathBuf,
    pub reference_rows: usize,
    pub run_rows: Vec<usize>,
    pub combined_rows: usize,
}

/// Writes `reference.csv`, one `run_NNN.csv` per stored run and
/// `combined.csv` (`run,f1,f2`, reference rows labelled `reference`).
pub fn export_plot_data(results_dir: &Path, problem: &str, out: Option<&Path>) -> HarnessResult<PlotDataOutput> {
    let id: ProblemId = problem
        .parse()
        .map_err(|e: crate::Error| HarnessError::Usage(e.to_string()))?;
    let manifest = Manifest::load(results_dir)?;
    let config = manifest.experiment_config()?;
    let runs: Vec<&RunRecord> = manifest.runs_for(id).collect();
    if runs.is_empty() {
        return Err(HarnessError::Usage(format!(
            "no runs of {id} in {}",
            results_dir.display()
        )));
    }
    let dir = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| results_dir.join("plot").join(id.to_string()));
    let reference = resolve_reference(results_dir, &manifest, &config, id, &config.reference_for(id))?;
    csvio::write_front(&dir.join("reference.csv"), reference.points())?;

    let mut combined = String::from("run,f1,f2\n");
    let push = |combined: &mut String, label: &str, pts: &[ObjectiveVector]| {
        for p in pts {
            writeln!(combined, "{label},{},{}", format_real(p[0]), format_real(p[1])).unwrap();
        }
    };
    push(&mut combined, "reference", reference.points());
    let mut run_rows = Vec::new();
    for r in runs {
        let front = store::read_run_front(results_dir, r)?;
        csvio::write_front(&dir.join(format!("run_{:03}.csv", r.run)), &front)?;
        push(&mut combined, &r.run.to_string(), &front);
        run_rows.push(front.len());
    }
    csvio::write_file(&dir.join("combined.csv"), combined.as_bytes())?;
    Ok(PlotDataOutput {
        dir,
        reference_rows: reference.len(),
        combined_rows: reference.len() + run_rows.iter().sum::<usize>(),
        run_rows,
    })
}

/// Writes the sampled analytic front of `problem` to `out`.
pub fn write_reference(problem: &str, n_points: usize, out: &Path) -> HarnessResult<ReferenceFront> {
    let id: ProblemId = problem
        .parse()
        .map_err(|e: crate::Error| HarnessError::Usage(e.to_string()))?;
    let front = reference_front(&Problem::new(id), n_points).map_err(|e| match e {
        crate::Error::NoAnalyticFront(_) => HarnessError::MissingReference(format!("{id}: no analytic front")),
        other => other.into(),
    })?;
    csvio::write_front(out, front.points())?;
    Ok(front)
}
