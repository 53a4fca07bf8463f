//! The grid-based multi-objective cat swarm engine.
//!
//! Every iteration sends the whole population through tracing mode (move
//! toward a leader drawn from the least crowded hyper-box of the archive)
//! and then through seeking mode (mutate copies, keep a non-dominated one).
//! The archive is refreshed with the population at the top of each
//! iteration and trimmed from its most crowded boxes.

use crate::error::{Error, Result};
use crate::pareto::{non_dominated_indices, Archive, Grid, ObjectiveVector, Solution};
use crate::problems::Problem;
use rand::seq::{index, IndexedRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Below this magnitude a coordinate is perturbed additively in seeking mode.
const STALL_EPS: f64 = 1e-12;
/// Fraction of the bound range used for the additive fallback perturbation.
const STALL_RANGE_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GmocsoConfig {
    pub population_size: usize,
    pub max_iterations: usize,
    /// Attraction constant toward the leader.
    pub c1: f64,
    /// Multiplier on the previous velocity.
    pub inertia_weight: f64,
    /// Seeking memory pool: candidates per cat, the original included.
    pub smp: usize,
    /// Counts of dimension to change per seeking candidate.
    pub cdc: usize,
    /// Seeking range of the selected dimension.
    pub srd: f64,
    /// Bins per objective of the hyper-grid.
    pub n_grid: usize,
    pub archive_capacity: usize,
    /// Draw the tracing random factor per dimension instead of once per cat.
    pub per_dimension_rand: bool,
    pub seed: u64,
}

impl Default for GmocsoConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            max_iterations: 100,
            c1: 1.0,
            inertia_weight: 1.0,
            smp: 2,
            cdc: 1,
            srd: 1.0,
            n_grid: 10,
            archive_capacity: 100,
            per_dimension_rand: false,
            seed: 0,
        }
    }
}

impl GmocsoConfig {
    /// Checks the configuration against `problem`, listing every violation.
    pub fn validate(&self, problem: &Problem) -> Result<()> {
        let mut errs = Vec::new();
        if self.population_size == 0 {
            errs.push("population_size must be at least 1".to_string());
        }
        if self.smp == 0 {
            errs.push("smp must be at least 1".to_string());
        }
        if self.cdc == 0 || self.cdc > problem.n_vars {
            errs.push(format!(
                "cdc must be in [1, {}] for {}, got {}",
                problem.n_vars, problem.id, self.cdc
            ));
        }
        if !(self.srd.is_finite() && self.srd >= 0.0) {
            errs.push(format!("srd must be finite and >= 0, got {}", self.srd));
        }
        if !self.c1.is_finite() {
            errs.push(format!("c1 must be finite, got {}", self.c1));
        }
        if !self.inertia_weight.is_finite() {
            errs.push(format!("inertia_weight must be finite, got {}", self.inertia_weight));
        }
        if self.n_grid == 0 {
            errs.push("n_grid must be at least 1".to_string());
        }
        if self.archive_capacity == 0 {
            errs.push("archive_capacity must be at least 1".to_string());
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(errs))
        }
    }
}

/// Internal population, external archive and the generator driving a run.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerState {
    pub population: Vec<Solution>,
    pub archive: Archive,
    pub grid: Grid,
    pub iteration: usize,
    pub rng: ChaCha8Rng,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub final_front: Vec<ObjectiveVector>,
    pub final_positions: Vec<Vec<f64>>,
    pub seed: u64,
    pub elapsed_seconds: f64,
    pub iterations_completed: usize,
}

fn evaluated(problem: &Problem, position: Vec<f64>, velocity: Vec<f64>) -> Result<Solution> {
    let objectives = problem.evaluate(&position)?;
    Ok(Solution {
        position,
        velocity,
        objectives,
    })
}

fn absorb(archive: &mut Archive, population: &[Solution], n_grid: usize, rng: &mut ChaCha8Rng) -> Result<Grid> {
    for cat in population {
        archive.insert(cat.clone());
    }
    archive.truncate(n_grid, rng);
    archive.grid(n_grid)
}

/// Random initial population, archive seeded with its non-dominated members.
pub fn initialize(config: &GmocsoConfig, problem: &Problem) -> Result<OptimizerState> {
    config.validate(problem)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut population = Vec::with_capacity(config.population_size);
    for _ in 0..config.population_size {
        let raw: Vec<f64> = problem
            .lower
            .iter()
            .zip(&problem.upper)
            .map(|(&lo, &hi)| lo + rng.random::<f64>() * (hi - lo))
            .collect();
        let position = problem.repair(&raw);
        population.push(evaluated(problem, position, vec![0.0; problem.n_vars])?);
    }
    let mut archive = Archive::new(config.archive_capacity);
    let grid = absorb(&mut archive, &population, config.n_grid, &mut rng)?;
    Ok(OptimizerState {
        population,
        archive,
        grid,
        iteration: 0,
        rng,
    })
}

/// Moves every cat toward `leader`:
/// `v <- w v + c1 r (leader - x)`, `x <- x + v`, then clamp and snap.
pub fn tracing_step(
    state: &mut OptimizerState,
    config: &GmocsoConfig,
    problem: &Problem,
    leader: &Solution,
) -> Result<()> {
    let rng = &mut state.rng;
    for cat in state.population.iter_mut() {
        let shared_r: f64 = rng.random();
        let mut position = Vec::with_capacity(cat.position.len());
        for d in 0..cat.position.len() {
            let r = if config.per_dimension_rand {
                rng.random()
            } else {
                shared_r
            };
            let v = config.inertia_weight * cat.velocity[d]
                + config.c1 * r * (leader.position[d] - cat.position[d]);
            cat.velocity[d] = v;
            position.push(cat.position[d] + v);
        }
        let position = problem.repair(&position);
        cat.objectives = problem.evaluate(&position)?;
        cat.position = position;
    }
    Ok(())
}

/// Index of a uniformly random non-dominated member of `candidates`.
pub fn greedy_choice<R: Rng + ?Sized>(candidates: &[Solution], rng: &mut R) -> usize {
    let front = non_dominated_indices(candidates);
    *front.choose(rng).expect("a non-empty set has a non-dominated member")
}

fn mutate<R: Rng + ?Sized>(
    position: &[f64],
    config: &GmocsoConfig,
    problem: &Problem,
    rng: &mut R,
) -> Vec<f64> {
    let mut x = position.to_vec();
    for d in index::sample(rng, x.len(), config.cdc) {
        let r: f64 = rng.random();
        let scale = (2.0 * r - 1.0) * config.srd;
        if x[d].abs() <= STALL_EPS {
            x[d] += scale * STALL_RANGE_FRACTION * (problem.upper[d] - problem.lower[d]);
        } else {
            x[d] += scale * x[d];
        }
    }
    problem.repair(&x)
}

/// Greedy seeking mode: `smp - 1` mutated copies plus the original compete,
/// and the cat jumps to a random non-dominated one.
pub fn seeking_step(state: &mut OptimizerState, config: &GmocsoConfig, problem: &Problem) -> Result<()> {
    if config.smp <= 1 {
        return Ok(());
    }
    let rng = &mut state.rng;
    for cat in state.population.iter_mut() {
        let mut candidates = Vec::with_capacity(config.smp);
        candidates.push(cat.clone());
        for _ in 1..config.smp {
            let position = mutate(&cat.position, config, problem, rng);
            candidates.push(evaluated(problem, position, cat.velocity.clone())?);
        }
        let pick = greedy_choice(&candidates, rng);
        *cat = candidates.swap_remove(pick);
    }
    Ok(())
}

/// One loop body: archive update, truncation, leader selection, tracing,
/// seeking.
pub fn iterate(state: &mut OptimizerState, config: &GmocsoConfig, problem: &Problem) -> Result<()> {
    state.grid = absorb(&mut state.archive, &state.population, config.n_grid, &mut state.rng)?;
    let leader = state.archive.select_leader(&state.grid, &mut state.rng)?;
    tracing_step(state, config, problem, &leader)?;
    seeking_step(state, config, problem)?;
    state.iteration += 1;
    Ok(())
}

/// Runs the full budget, handing each iteration-boundary state to `observe`.
///
/// After the last iteration the moved population is offered to the archive
/// once more so that the final moves are not discarded.
pub fn run_with_observer<F>(config: &GmocsoConfig, problem: &Problem, mut observe: F) -> Result<RunResult>
where
    F: FnMut(&OptimizerState),
{
    let started = Instant::now();
    let mut state = initialize(config, problem)?;
    observe(&state);
    for _ in 0..config.max_iterations {
        iterate(&mut state, config, problem)?;
        observe(&state);
    }
    state.grid = absorb(&mut state.archive, &state.population, config.n_grid, &mut state.rng)?;
    let elapsed_seconds = started.elapsed().as_secs_f64();
    let members = state.archive.into_members();
    Ok(RunResult {
        final_front: members.iter().map(|m| m.objectives.clone()).collect(),
        final_positions: members.into_iter().map(|m| m.position).collect(),
        seed: config.seed,
        elapsed_seconds,
        iterations_completed: state.iteration,
    })
}

pub fn run(config: &GmocsoConfig, problem: &Problem) -> Result<RunResult> {
    run_with_observer(config, problem, |_| {})
}
