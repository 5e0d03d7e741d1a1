//! Benchmark functions, population-based minimizers and paired statistics
//! for side-by-side comparison of metaheuristics.
//!
//! The crate is `no_std` and only needs `alloc`. Timing, memory profiling,
//! file formats and the command line live in the `swarm-arena` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod benchfns;
pub mod error;
pub mod optimizers;
pub mod plan;
pub mod rng;
pub mod space;
pub mod stats;

pub use benchfns::{catalog, default_space, evaluate, Dimensionality, ProblemId, ProblemSpec};
pub use error::{Error, Result};
pub use optimizers::{minimize, AlgorithmId, OptimizerConfig, Population, RunRecord};
pub use plan::{
    plan_evaluation, success, trial_seed, EvaluationKind, EvaluationPlan, PlanOverrides, SuccessTolerance, Variant,
};
pub use space::{repair, SearchSpace};
