//! Summaries and nonparametric comparisons across algorithms.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use statrs::function::erf::erfc;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// Pooled sample size up to which the rank-sum test is enumerated exactly.
pub const EXACT_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Rgd,
    Spacing,
    Spread,
    Elapsed,
}

impl Metric {
    pub const QUALITY: [Metric; 3] = [Metric::Rgd, Metric::Spacing, Metric::Spread];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Rgd => "rgd",
            Metric::Spacing => "spacing",
            Metric::Spread => "spread",
            Metric::Elapsed => "elapsed",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "rgd" => Ok(Metric::Rgd),
            "spacing" | "s" => Ok(Metric::Spacing),
            "spread" | "delta" => Ok(Metric::Spread),
            "elapsed" | "elapsed_seconds" => Ok(Metric::Elapsed),
            other => Err(format!("unknown metric `{other}`")),
        }
    }
}

/// Per-run values of one metric for one algorithm on one problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSample {
    pub algorithm: String,
    pub problem: String,
    pub metric: Metric,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator), 0 for a single value.
    pub std: f64,
    pub n: usize,
}

pub fn summarize(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("sample"));
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n == 1 {
        0.0
    } else {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    };
    Ok(Summary { mean, std, n })
}

/// 1-based ranks, ascending; tied values share the mean of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Sizes of the groups of tied values (groups of 1 included).
fn tie_groups(values: &[f64]) -> Vec<usize> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut groups = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        groups.push(j - i + 1);
        i = j + 1;
    }
    groups
}

/// Mean of each algorithm on one (problem, metric) row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanRow {
    pub problem: String,
    pub metric: Metric,
    pub means: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub problem: String,
    pub metric: Metric,
    pub ranks: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRanking {
    pub metric: Metric,
    pub subtotal: BTreeMap<String, f64>,
    /// Subtotal divided by the number of rows of this metric.
    pub ranking: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FriedmanStatistic {
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankTable {
    pub algorithms: Vec<String>,
    pub rows: Vec<RankRow>,
    pub per_metric: Vec<MetricRanking>,
    pub total: BTreeMap<String, f64>,
    /// Total divided by the number of rows.
    pub overall: BTreeMap<String, f64>,
    pub friedman: FriedmanStatistic,
}

impl RankTable {
    /// Algorithms ordered best-first by overall ranking.
    pub fn ordering(&self) -> Vec<(&str, f64)> {
        let mut v: Vec<(&str, f64)> = self.overall.iter().map(|(a, &r)| (a.as_str(), r)).collect();
        v.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(b.0)));
        v
    }
}

/// Ranks algorithms within each row (lower mean is better) and aggregates the
/// ranks per metric and overall.
pub fn friedman_ranks(rows: &[MeanRow]) -> Result<RankTable> {
    let first = rows.first().ok_or(Error::EmptySample)?;
    let algorithms: Vec<String> = first.means.keys().cloned().collect();
    if algorithms.len() < 2 {
        return Err(Error::InconsistentAlgorithms(
            "at least two algorithms are required".into(),
        ));
    }
    let mut rank_rows = Vec::with_capacity(rows.len());
    let mut tie_correction = 0.0;
    for row in rows {
        if !row.means.keys().eq(algorithms.iter()) {
            return Err(Error::InconsistentAlgorithms(format!(
                "row {}/{} has {:?}, expected {:?}",
                row.problem,
                row.metric,
                row.means.keys().collect::<Vec<_>>(),
                algorithms
            )));
        }
        let means: Vec<f64> = row.means.values().copied().collect();
        tie_correction += tie_groups(&means)
            .into_iter()
            .map(|t| (t * t * t - t) as f64)
            .sum::<f64>();
        let ranks = algorithms.iter().cloned().zip(average_ranks(&means)).collect();
        rank_rows.push(RankRow {
            problem: row.problem.clone(),
            metric: row.metric,
            ranks,
        });
    }

    let sum_ranks = |filter: &dyn Fn(&RankRow) -> bool| -> (BTreeMap<String, f64>, usize) {
        let mut sums: BTreeMap<String, f64> = algorithms.iter().map(|a| (a.clone(), 0.0)).collect();
        let mut count = 0;
        for r in rank_rows.iter().filter(|r| filter(r)) {
            count += 1;
            for (a, v) in &r.ranks {
                *sums.get_mut(a).expect("same algorithms") += v;
            }
        }
        (sums, count)
    };

    let metrics: BTreeSet<Metric> = rank_rows.iter().map(|r| r.metric).collect();
    let per_metric = metrics
        .into_iter()
        .map(|m| {
            let (subtotal, count) = sum_ranks(&|r| r.metric == m);
            let ranking = subtotal.iter().map(|(a, s)| (a.clone(), s / count as f64)).collect();
            MetricRanking {
                metric: m,
                subtotal,
                ranking,
            }
        })
        .collect();
    let (total, n_rows) = sum_ranks(&|_| true);
    let overall = total.iter().map(|(a, s)| (a.clone(), s / n_rows as f64)).collect();

    let n = n_rows as f64;
    let k = algorithms.len() as f64;
    let sum_sq: f64 = total.values().map(|r| r * r).sum();
    let raw = 12.0 / (n * k * (k + 1.0)) * sum_sq - 3.0 * n * (k + 1.0);
    let correction = 1.0 - tie_correction / (n * (k * k * k - k));
    let dof = algorithms.len() - 1;
    let (chi_square, p_value) = if correction <= 0.0 {
        (0.0, 1.0)
    } else {
        let chi = (raw / correction).max(0.0);
        let dist = ChiSquared::new(dof as f64).expect("dof >= 1");
        (chi, (1.0 - dist.cdf(chi)).clamp(0.0, 1.0))
    };

    Ok(RankTable {
        algorithms,
        rows: rank_rows,
        per_metric,
        total,
        overall,
        friedman: FriedmanStatistic {
            chi_square,
            degrees_of_freedom: dof,
            p_value,
        },
    })
}

fn check_samples(a: &[f64], b: &[f64]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("rank-sum sample"));
    }
    Ok(())
}

fn pooled(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().chain(b).copied().collect()
}

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) p-value.
///
/// Exact enumeration is used when the pooled sample has at most
/// [`EXACT_LIMIT`] values and no ties, the tie-corrected normal
/// approximation with continuity correction otherwise.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<f64> {
    check_samples(a, b)?;
    let all = pooled(a, b);
    let has_ties = tie_groups(&all).iter().any(|&t| t > 1);
    if all.len() <= EXACT_LIMIT && !has_ties {
        wilcoxon_exact(a, b)
    } else {
        wilcoxon_normal(a, b)
    }
}

/// Exact two-sided p-value, `2 * min(P(W <= w), P(W >= w))` capped at 1,
/// where `W` is the rank sum of `a` under random assignment of ranks.
/// Requires tie-free data.
pub fn wilcoxon_exact(a: &[f64], b: &[f64]) -> Result<f64> {
    check_samples(a, b)?;
    let all = pooled(a, b);
    if tie_groups(&all).iter().any(|&t| t > 1) {
        return Err(Error::InvalidConfig(vec!["exact rank-sum test needs tie-free samples".into()]));
    }
    let n = all.len();
    let n1 = a.len();
    let ranks = average_ranks(&all);
    let observed = ranks[..n1].iter().sum::<f64>().round() as usize;

    // counts[k][s]: subsets of size k from ranks 1..=r with sum s
    let max_sum = n * (n + 1) / 2;
    let mut counts = vec![vec![0u128; max_sum + 1]; n1 + 1];
    counts[0][0] = 1;
    for r in 1..=n {
        for k in (1..=n1.min(r)).rev() {
            for s in (r..=max_sum).rev() {
                counts[k][s] += counts[k - 1][s - r];
            }
        }
    }
    let dist = &counts[n1];
    let total: u128 = dist.iter().sum();
    let lower: u128 = dist[..=observed].iter().sum();
    let upper: u128 = dist[observed..].iter().sum();
    let p = (2 * lower.min(upper)) as f64 / total as f64;
    Ok(p.min(1.0))
}

/// Normal approximation with tie-corrected variance and continuity correction.
pub fn wilcoxon_normal(a: &[f64], b: &[f64]) -> Result<f64> {
    check_samples(a, b)?;
    let all = pooled(a, b);
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let n = n1 + n2;
    let ranks = average_ranks(&all);
    let r1: f64 = ranks[..a.len()].iter().sum();
    let u = r1 - n1 * (n1 + 1.0) / 2.0;
    let mu = n1 * n2 / 2.0;
    let ties: f64 = tie_groups(&all).into_iter().map(|t| (t * t * t - t) as f64).sum();
    let var = n1 * n2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    if var.is_nan() || var <= 0.0 {
        return Ok(1.0);
    }
    let z = ((u - mu).abs() - 0.5).max(0.0) / var.sqrt();
    Ok(erfc(z / std::f64::consts::SQRT_2).clamp(0.0, 1.0))
}

/// Significance verdict: strictly below `alpha`.
pub fn is_significant(p_value: f64, alpha: f64) -> bool {
    p_value < alpha
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignificanceEntry {
    pub problem: String,
    pub metric: Metric,
    pub baseline: String,
    pub other: String,
    pub p_value: f64,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SignificanceReport {
    pub alpha: f64,
    pub entries: Vec<SignificanceEntry>,
    pub warnings: Vec<String>,
}

/// Baseline-versus-each-other-algorithm rank-sum tests for every
/// (problem, metric) pair present in `samples`.
pub fn significance_report(samples: &[MetricSample], baseline: &str, alpha: f64) -> Result<SignificanceReport> {
    if !samples.iter().any(|s| s.algorithm == baseline) {
        return Err(Error::InconsistentAlgorithms(format!(
            "baseline `{baseline}` not present in samples"
        )));
    }
    let mut groups: BTreeMap<(String, Metric), Vec<&MetricSample>> = BTreeMap::new();
    for s in samples {
        groups.entry((s.problem.clone(), s.metric)).or_default().push(s);
    }
    let mut report = SignificanceReport {
        alpha,
        ..Default::default()
    };
    for ((problem, metric), group) in groups {
        let Some(base) = group.iter().find(|s| s.algorithm == baseline) else {
            report
                .warnings
                .push(format!("{problem}/{metric}: baseline `{baseline}` missing, skipped"));
            continue;
        };
        let others: Vec<&&MetricSample> = group.iter().filter(|s| s.algorithm != baseline).collect();
        if others.is_empty() {
            report
                .warnings
                .push(format!("{problem}/{metric}: no algorithm to compare against"));
        }
        for other in others {
            match wilcoxon_rank_sum(&base.values, &other.values) {
                Ok(p) => report.entries.push(SignificanceEntry {
                    problem: problem.clone(),
                    metric,
                    baseline: baseline.to_string(),
                    other: other.algorithm.clone(),
                    p_value: p,
                    significant: is_significant(p, alpha),
                }),
                Err(e) => report
                    .warnings
                    .push(format!("{problem}/{metric}/{}: {e}", other.algorithm)),
            }
        }
    }
    Ok(report)
}
