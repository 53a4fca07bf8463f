//! One line per acceptance criterion. Exits non-zero if any gating
//! criterion fails; the ZDT4 target is reported but does not gate.

use gmocso::metrics::{rgd, spacing, spread, FrontPair};
use gmocso::optimizer::{run, run_with_observer, GmocsoConfig};
use gmocso::problems::{reference_front, vessel_constraints, Problem, ProblemId};
use gmocso::stats::{friedman_ranks, wilcoxon_exact, MeanRow, Metric};
use gmocso::{dominance, Dominance, ObjectiveVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::Instant;

const RUNS: u64 = 30;
const REFERENCE_POINTS: usize = 1000;

struct Verdict {
    criterion: &'static str,
    gating: bool,
    pass: bool,
    detail: String,
}

fn verdict(criterion: &'static str, pass: bool, detail: String) -> Verdict {
    Verdict { criterion, gating: true, pass, detail }
}

struct Means {
    rgd: f64,
    spacing: f64,
}

fn protocol(id: ProblemId) -> Means {
    let problem = Problem::new(id);
    let reference = reference_front(&problem, REFERENCE_POINTS).unwrap();
    let (mut r, mut s) = (0.0, 0.0);
    for seed in 0..RUNS {
        let result = run(&GmocsoConfig { seed, ..GmocsoConfig::default() }, &problem).unwrap();
        let pair = FrontPair::new(reference.points(), &result.final_front).unwrap();
        r += rgd(&pair);
        s += spacing(&result.final_front).unwrap_or(0.0);
    }
    Means { rgd: r / RUNS as f64, spacing: s / RUNS as f64 }
}

fn zdt_reproduction(out: &mut Vec<Verdict>) {
    let m = protocol(ProblemId::Zdt1);
    out.push(verdict(
        "1 ZDT1 mean rgd <= 0.05 and mean spacing <= 0.3",
        m.rgd <= 0.05 && m.spacing <= 0.3,
        format!("rgd {:.6}, spacing {:.6}", m.rgd, m.spacing),
    ));
    let mut detail = Vec::new();
    let mut pass = true;
    for id in [ProblemId::Zdt2, ProblemId::Zdt3, ProblemId::Zdt6] {
        let m = protocol(id);
        pass &= m.rgd <= 0.1;
        detail.push(format!("{id} {:.6}", m.rgd));
    }
    out.push(verdict("2 ZDT2/ZDT3/ZDT6 mean rgd <= 0.1", pass, detail.join(", ")));
    let m = protocol(ProblemId::Zdt4);
    out.push(Verdict {
        criterion: "2 ZDT4 mean rgd <= 0.5 (stretch)",
        gating: false,
        pass: m.rgd <= 0.5,
        detail: format!("rgd {:.6}", m.rgd),
    });
}

fn mutually_non_dominated(points: &[&ObjectiveVector]) -> bool {
    points.iter().enumerate().all(|(i, a)| {
        points.iter().enumerate().all(|(j, b)| {
            i == j || !matches!(dominance(a, b).unwrap(), Dominance::FirstDominates | Dominance::Equal)
        })
    })
}

fn archive_invariants(out: &mut Vec<Verdict>) {
    let mut violations = 0usize;
    let mut checks = 0usize;
    for id in ProblemId::ALL {
        let problem = Problem::new(id);
        for capacity in [100, 3] {
            let config = GmocsoConfig {
                population_size: 5,
                max_iterations: 20,
                archive_capacity: capacity,
                seed: 1,
                ..GmocsoConfig::default()
            };
            run_with_observer(&config, &problem, |state| {
                checks += 1;
                let objs: Vec<&ObjectiveVector> = state.archive.members().iter().map(|m| &m.objectives).collect();
                if !mutually_non_dominated(&objs) || objs.len() > capacity {
                    violations += 1;
                }
            })
            .unwrap();
        }
    }
    out.push(verdict(
        "3 archive mutually non-dominated and within capacity",
        violations == 0,
        format!("{violations} violations over {checks} iteration snapshots"),
    ));
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for k in 0..a.len() {
        s += (a[k] - b[k]) * (a[k] - b[k]);
    }
    s.sqrt()
}

fn oracle_rgd(reference: &[ObjectiveVector], approx: &[ObjectiveVector]) -> f64 {
    let mut total = 0.0;
    for p in reference {
        let mut best = f64::INFINITY;
        for q in approx {
            let d = dist(p, q);
            if d < best {
                best = d;
            }
        }
        total += best;
    }
    total / reference.len() as f64
}

fn oracle_spacing(approx: &[ObjectiveVector]) -> f64 {
    let n = approx.len();
    let mut d = vec![f64::INFINITY; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                d[i] = d[i].min(dist(&approx[i], &approx[j]));
            }
        }
    }
    let mean = d.iter().sum::<f64>() / n as f64;
    (d.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64).sqrt()
}

fn lex_sorted(v: &[ObjectiveVector]) -> Vec<ObjectiveVector> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    v
}

fn oracle_spread(reference: &[ObjectiveVector], approx: &[ObjectiveVector]) -> f64 {
    let r = lex_sorted(reference);
    let a = lex_sorted(approx);
    let df = dist(&r[0], &a[0]);
    let dl = dist(&r[r.len() - 1], &a[a.len() - 1]);
    let d: Vec<f64> = a
        .iter()
        .map(|p| r.iter().map(|q| dist(p, q)).fold(f64::INFINITY, f64::min))
        .collect();
    let mean = d.iter().sum::<f64>() / d.len() as f64;
    let num = df + dl + d.iter().map(|x| (x - mean).abs()).sum::<f64>();
    let den = df + dl + (a.len() as f64 - 1.0) * mean;
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

fn random_front(rng: &mut ChaCha8Rng, max: usize) -> Vec<ObjectiveVector> {
    let n = rng.random_range(2..=max);
    (0..n)
        .map(|_| ObjectiveVector::from([rng.random::<f64>() * 2.0 - 0.5, rng.random::<f64>() * 3.0]))
        .collect()
}

fn metric_oracles(out: &mut Vec<Verdict>) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let reference = random_front(&mut rng, 20);
        let approx = random_front(&mut rng, 20);
        let pair = FrontPair::new(&reference, &approx).unwrap();
        worst = worst
            .max((rgd(&pair) - oracle_rgd(&reference, &approx)).abs())
            .max((spacing(&approx).unwrap() - oracle_spacing(&approx)).abs())
            .max((spread(&pair) - oracle_spread(&reference, &approx)).abs());
    }
    let v = |pts: &[[f64; 2]]| pts.iter().map(|&p| ObjectiveVector::from(p)).collect::<Vec<_>>();
    let s = spacing(&v(&[[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]])).unwrap();
    let (r1, a1) = (v(&[[0.0, 0.0], [1.0, 1.0]]), v(&[[0.0, 0.0]]));
    let g = rgd(&FrontPair::new(&r1, &a1).unwrap());
    let (r2, a2) = (v(&[[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]]), v(&[[0.1, 1.0], [1.0, 0.0]]));
    let d = spread(&FrontPair::new(&r2, &a2).unwrap());
    let hand = (s - (2.0f64 / 9.0).sqrt()).abs() < 1e-9
        && (g - std::f64::consts::SQRT_2 / 2.0).abs() < 1e-9
        && (d - 4.0 / 3.0).abs() < 1e-9;
    out.push(verdict(
        "4 metrics match brute-force oracles and hand values",
        worst <= 1e-12 && hand,
        format!("max oracle deviation {worst:.3e}; spacing {s:.9}, rgd {g:.9}, spread {d:.9}"),
    ));
}

/// Two-sided p-value by listing every size-`na` subset of the pooled ranks.
fn wilcoxon_enumerated(a: &[f64], b: &[f64]) -> f64 {
    let mut pooled: Vec<(f64, bool)> = a.iter().map(|&x| (x, true)).chain(b.iter().map(|&x| (x, false))).collect();
    pooled.sort_by(|x, y| x.0.total_cmp(&y.0));
    let n = pooled.len();
    let observed: usize = pooled.iter().enumerate().filter(|(_, p)| p.1).map(|(i, _)| i + 1).sum();
    let (mut le, mut ge, mut total) = (0u64, 0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        let w: usize = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).sum();
        total += 1;
        le += (w <= observed) as u64;
        ge += (w >= observed) as u64;
    }
    (2.0 * le.min(ge) as f64 / total as f64).min(1.0)
}

fn wilcoxon(out: &mut Vec<Verdict>) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for na in 1..12 {
        for nb in 1..=(12 - na) {
            for _ in 0..5 {
                let mut values: Vec<f64> = (0..na + nb).map(|i| i as f64 + rng.random::<f64>() * 0.5).collect();
                values.shuffle(&mut rng);
                let (a, b) = values.split_at(na);
                worst = worst.max((wilcoxon_exact(a, b).unwrap() - wilcoxon_enumerated(a, b)).abs());
                pairs += 1;
            }
        }
    }
    let p = wilcoxon_exact(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
    out.push(verdict(
        "5 exact rank-sum matches enumeration; {1,2,3} vs {4,5,6} p = 0.1",
        worst <= 1e-15 && p == 0.1,
        format!("{pairs} samples, max deviation {worst:.3e}; p = {p}"),
    ));
}

const ALGORITHMS: [&str; 4] = ["GMOCSO", "MMA", "MODA", "SPEA2"];

#[rustfmt::skip]
const PUBLISHED_MEANS: [(&str, Metric, [f64; 4], [f64; 4]); 15] = [
    ("ZDT1", Metric::Rgd, [0.008251645, 0.004779893, 0.100799368, 0.053992], [2.0, 1.0, 4.0, 3.0]),
    ("ZDT1", Metric::Spacing, [0.077806532, 0.075503344, 0.027136347, 0.878917], [3.0, 2.0, 1.0, 4.0]),
    ("ZDT1", Metric::Spread, [0.853871219, 0.399518442, 1.364857245, 0.853213], [3.0, 1.0, 4.0, 2.0]),
    ("ZDT2", Metric::Rgd, [0.028268889, 0.004856085, 0.074477018, 34254.15], [2.0, 1.0, 3.0, 4.0]),
    ("ZDT2", Metric::Spacing, [0.075916272, 0.076431697, 0.017571498, 463969.7], [2.0, 3.0, 1.0, 4.0]),
    ("ZDT2", Metric::Spread, [0.839039408, 0.395613038, 1.428002616, 0.827969], [3.0, 1.0, 4.0, 2.0]),
    ("ZDT3", Metric::Rgd, [0.009046667, 0.005300991, 0.086483057, 0.116075], [2.0, 1.0, 3.0, 4.0]),
    ("ZDT3", Metric::Spacing, [0.217135677, 0.269998037, 0.080144325, 0.895159], [2.0, 3.0, 1.0, 4.0]),
    ("ZDT3", Metric::Spread, [0.939763609, 0.559479212, 1.345371429, 0.784542], [3.0, 1.0, 4.0, 2.0]),
    ("ZDT4", Metric::Rgd, [8.22e-03, 0.004776174, 1.83e-01, 5.01e-02], [2.0, 1.0, 4.0, 3.0]),
    ("ZDT4", Metric::Spacing, [8.22e-03, 0.075192952, 2.11e-01, 6.30e+00], [1.0, 2.0, 3.0, 4.0]),
    ("ZDT4", Metric::Spread, [8.62e-01, 0.39837872, 1.28e+00, 9.18e-01], [2.0, 1.0, 4.0, 3.0]),
    ("ZDT6", Metric::Rgd, [0.007520491, 0.003779973, 0.030610889, 0.134059], [2.0, 1.0, 3.0, 4.0]),
    ("ZDT6", Metric::Spacing, [0.256361178, 0.233597523, 0.158387045, 3.093395], [3.0, 2.0, 1.0, 4.0]),
    ("ZDT6", Metric::Spread, [1.016366296, 0.589973634, 1.518800475, 0.809812], [3.0, 1.0, 4.0, 2.0]),
];

fn rank_replay(out: &mut Vec<Verdict>) {
    let rows: Vec<MeanRow> = PUBLISHED_MEANS
        .iter()
        .map(|(p, m, means, _)| MeanRow {
            problem: p.to_string(),
            metric: *m,
            means: ALGORITHMS.iter().map(|a| a.to_string()).zip(means.iter().copied()).collect(),
        })
        .collect();
    let table = friedman_ranks(&rows).unwrap();
    let matching = table
        .rows
        .iter()
        .zip(&PUBLISHED_MEANS)
        .filter(|(row, (.., expected))| ALGORITHMS.iter().zip(expected).all(|(a, e)| row.ranks[*a] == *e))
        .count();
    let ordering: Vec<(&str, f64)> = table.ordering();
    let expected = [("MMA", 22.0 / 15.0), ("GMOCSO", 35.0 / 15.0), ("MODA", 44.0 / 15.0), ("SPEA2", 49.0 / 15.0)];
    let ordered = ordering.len() == 4
        && ordering.iter().zip(&expected).all(|((a, v), (ea, ev))| a == ea && (v - ev).abs() < 1e-12);
    let shown: BTreeMap<&str, String> = ordering.iter().map(|(a, v)| (*a, format!("{v:.4}"))).collect();
    out.push(verdict(
        "6 rank table replay reproduces all rows and overall ordering",
        matching == 15 && ordered,
        format!("{matching}/15 rows; overall {shown:?}"),
    ));
}

fn determinism(out: &mut Vec<Verdict>) {
    let tmp = tempfile::TempDir::new().unwrap();
    let write = |name: &str, seed_base: u64| {
        let cfg = tmp.path().join(format!("{name}.json"));
        std::fs::write(
            &cfg,
            format!(r#"{{"problems": ["ZDT1", "ZDT3"], "runs": 2, "seed_base": {seed_base}}}"#),
        )
        .unwrap();
        let dir = tmp.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_gmocso"))
            .args(["run", "--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()])
            .output()
            .unwrap()
            .status;
        assert!(status.success());
        let mut files = Vec::new();
        for p in ["ZDT1", "ZDT3"] {
            for r in 0..2 {
                files.push(std::fs::read(dir.join(format!("fronts/{p}/run_{r:03}.csv"))).unwrap());
            }
        }
        files
    };
    let a = write("a", 7);
    let b = write("b", 7);
    let c = write("c", 8);
    let same = a == b;
    let changed = a.iter().zip(&c).any(|(x, y)| x != y);
    out.push(verdict(
        "7 identical config gives byte-identical fronts; new seed changes one",
        same && changed,
        format!("identical: {same}, seed change differs: {changed}"),
    ));
}

fn pressure_vessel(out: &mut Vec<Verdict>) {
    let problem = Problem::new(ProblemId::PressureVessel);
    let f = problem.evaluate(&[1.0, 1.0, 10.0, 10.0]).unwrap();
    let cost_ok = (f[0] - 470.111).abs() < 1e-6;
    let expected_violation = 1_296_000.0 - 1000.0 * std::f64::consts::PI - 4000.0 * std::f64::consts::PI / 3.0;
    let violation_ok = (f[1] - expected_violation).abs() < 1e-6;

    let mut mismatches = 0;
    let mut feasible_runs = 0;
    for seed in 0..RUNS {
        let result = run(&GmocsoConfig { seed, ..GmocsoConfig::default() }, &problem).unwrap();
        for (x, y) in result.final_positions.iter().zip(&result.final_front) {
            let v: f64 = vessel_constraints(x).iter().map(|g| (-g).max(0.0)).sum();
            if v != y[1] {
                mismatches += 1;
            }
        }
        if result.final_front.iter().any(|y| y[1] == 0.0) {
            feasible_runs += 1;
        }
    }
    out.push(verdict(
        "8 pressure vessel values, violation bookkeeping, a feasible design",
        cost_ok && violation_ok && mismatches == 0 && feasible_runs >= 1,
        format!(
            "f = ({:.6}, {:.6}); {mismatches} violation mismatches; {feasible_runs}/{RUNS} runs with a feasible point",
            f[0], f[1]
        ),
    ));
}

fn wall_time(out: &mut Vec<Verdict>) {
    let problem = Problem::new(ProblemId::Zdt1);
    let started = Instant::now();
    let result = run(&GmocsoConfig::default(), &problem).unwrap();
    let wall = started.elapsed().as_secs_f64();
    out.push(verdict(
        "9 single ZDT1 run at defaults <= 60 s",
        wall <= 60.0,
        format!("{wall:.3} s wall, {:.3} s inside run", result.elapsed_seconds),
    ));
}

fn main() -> ExitCode {
    let mut verdicts = Vec::new();
    zdt_reproduction(&mut verdicts);
    archive_invariants(&mut verdicts);
    metric_oracles(&mut verdicts);
    wilcoxon(&mut verdicts);
    rank_replay(&mut verdicts);
    determinism(&mut verdicts);
    pressure_vessel(&mut verdicts);
    wall_time(&mut verdicts);

    verdicts.sort_by_key(|v| v.criterion);
    let mut failed = 0;
    for v in &verdicts {
        let tag = match (v.pass, v.gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (logged, not gating)",
        };
        println!("criterion {}: {tag} ({})", v.criterion, v.detail);
        failed += (!v.pass && v.gating) as usize;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} gating criteria failed");
        ExitCode::FAILURE
    }
}
