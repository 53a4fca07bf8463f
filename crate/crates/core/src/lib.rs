//! Grid-based multi-objective cat swarm optimization.
//!
//! The crate is organised bottom-up:
//!
//! - [`pareto`]: objective vectors, Pareto dominance, the hyper-grid density
//!   estimator and the bounded external archive.
//! - [`problems`]: the ZDT1/2/3/4/6 benchmarks, the pressure vessel design
//!   problem and analytic reference fronts.
//! - [`optimizer`]: the cat swarm engine (tracing mode, greedy seeking mode,
//!   archive and grid maintenance).
//! - [`metrics`]: reversed generational distance, spacing and spread.
//! - [`stats`]: mean/std summaries, rank aggregation tables and the
//!   Wilcoxon rank-sum test.
//! - [`harness`]: batch experiments over seeds, CSV/JSON persistence and the
//!   commands behind the `gmocso` binary.
//!
//! ```
//! use gmocso::optimizer::{run, GmocsoConfig};
//! use gmocso::problems::{Problem, ProblemId};
//!
//! let problem = Problem::new(ProblemId::Zdt1);
//! let config = GmocsoConfig { max_iterations: 5, seed: 7, ..GmocsoConfig::default() };
//! let result = run(&config, &problem).unwrap();
//! assert!(!result.final_front.is_empty());
//! ```

pub mod error;
pub mod harness;
pub mod metrics;
pub mod optimizer;
pub mod pareto;
pub mod problems;
pub mod stats;

pub use error::{Error, Result};
pub use pareto::{
    dominance, non_dominated_filter, Archive, BoxIndex, Dominance, Grid, InsertOutcome,
    ObjectiveVector, Solution,
};
