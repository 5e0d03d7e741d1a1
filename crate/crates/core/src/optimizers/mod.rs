//! Five population-based minimizers behind one seedable entry point.
//!
//! All algorithms share the same scaffolding so comparisons stay fair:
//!
//! * the initial population is sampled uniformly from the search space with
//!   the trial's generator and evaluated once (`population_size` evaluations);
//! * every candidate is clamped into the box before it is evaluated;
//! * the leader is the best point evaluated so far, ties going to the lowest
//!   index;
//! * `trace[t]` is the leader's fitness after iteration `t`.
//!
//! Evaluation budgets per run:
//!
//! | algorithm | evaluations |
//! |-----------|-------------|
//! | WOA, BSA, PSO, FF | `population_size · (iterations + 1)` |
//! | FDO | `population_size · (iterations + 1) + retries` |
//!
//! where `retries` counts FDO scouts that re-tried their previous pace after
//! a rejected move (at most one per scout per iteration).
use core::fmt;
use core::str::FromStr;

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::benchfns::{evaluate_unchecked, ProblemId};
use crate::error::{Error, Result};
use crate::rng::{Randomness, TrialRng};
use crate::space::SearchSpace;

pub mod bsa;
pub mod fdo;
pub mod ff;
pub mod pso;
pub mod woa;

pub use bsa::BsaParams;
pub use fdo::FdoParams;
pub use ff::FfParams;
pub use pso::PsoParams;
pub use woa::WoaParams;

/// The compared algorithms, in reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum AlgorithmId {
    Woa,
    Bsa,
    Fdo,
    Pso,
    Ff,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 5] = [
        AlgorithmId::Woa,
        AlgorithmId::Bsa,
        AlgorithmId::Fdo,
        AlgorithmId::Pso,
        AlgorithmId::Ff,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn name(self) -> &'static str {
        match self {
            AlgorithmId::Woa => "woa",
            AlgorithmId::Bsa => "bsa",
            AlgorithmId::Fdo => "fdo",
            AlgorithmId::Pso => "pso",
            AlgorithmId::Ff => "ff",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::UnknownName {
                kind: "algorithm",
                name: t.to_string(),
            })
    }
}

/// Shared budget plus the tuning of every algorithm.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct OptimizerConfig {
    pub population_size: usize,
    pub iterations: usize,
    pub woa: WoaParams,
    pub bsa: BsaParams,
    pub pso: PsoParams,
    pub ff: FfParams,
    pub fdo: FdoParams,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            population_size: 30,
            iterations: 2000,
            woa: WoaParams::default(),
            bsa: BsaParams::default(),
            pso: PsoParams::default(),
            ff: FfParams::default(),
            fdo: FdoParams::default(),
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return invalid("population_size must be at least 2");
        }
        if self.iterations < 1 {
            return invalid("iterations must be at least 1");
        }
        self.woa.validate()?;
        self.bsa.validate()?;
        self.pso.validate()?;
        self.ff.validate()?;
        self.fdo.validate()
    }
}

pub(crate) fn invalid<T>(msg: &str) -> Result<T> {
    Err(Error::InvalidConfig(msg.into()))
}

pub(crate) fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("{name} = {p} is outside [0, 1]")))
    }
}

pub(crate) fn check_non_negative(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("{name} = {v} must be finite and >= 0")))
    }
}

/// A problem restricted to a box, counting every evaluation.
#[derive(Debug, Clone)]
pub struct Objective<'a> {
    problem: ProblemId,
    space: &'a SearchSpace,
    evaluations: u64,
}

impl<'a> Objective<'a> {
    pub fn new(problem: ProblemId, space: &'a SearchSpace) -> Result<Self> {
        problem.spec().check_dim(space.dim())?;
        Ok(Self {
            problem,
            space,
            evaluations: 0,
        })
    }

    pub fn problem(&self) -> ProblemId {
        self.problem
    }

    pub fn space(&self) -> &'a SearchSpace {
        self.space
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// Evaluates an in-bound point.
    pub fn evaluate(&mut self, x: &[f64]) -> f64 {
        debug_assert!(self.space.contains(x), "evaluating an out-of-bounds point");
        self.evaluations += 1;
        evaluate_unchecked(self.problem, x)
    }

    /// Clamps `x` into the box, then evaluates it.
    pub fn repair_and_evaluate(&mut self, x: &mut [f64]) -> f64 {
        self.space.repair_in_place(x);
        self.evaluate(x)
    }
}

/// Current positions, their fitness and the best-so-far leader.
///
/// For the greedy algorithms (BSA, FDO) the leader is always a member of the
/// population. WOA and FF move every agent each iteration, so their leader
/// can be a point no agent occupies any more.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub positions: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
}

impl Population {
    /// Builds a population from evaluated points and selects the leader.
    pub fn from_evaluated(positions: Vec<Vec<f64>>, fitness: Vec<f64>) -> Self {
        assert_eq!(positions.len(), fitness.len());
        assert!(!positions.is_empty());
        let mut pop = Self {
            best_position: positions[0].clone(),
            best_fitness: fitness[0],
            positions,
            fitness,
        };
        pop.refresh_leader();
        pop
    }

    /// Samples `size` points uniformly in the objective's box and evaluates them.
    pub fn initialize<R: Randomness + ?Sized>(objective: &mut Objective<'_>, size: usize, rng: &mut R) -> Self {
        let positions: Vec<Vec<f64>> = (0..size).map(|_| objective.space().sample(rng)).collect();
        let fitness = positions.iter().map(|x| objective.evaluate(x)).collect();
        Self::from_evaluated(positions, fitness)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.positions.first().map_or(0, Vec::len)
    }

    /// Index of the best current member, lowest index on ties.
    pub fn argmin(&self) -> usize {
        let mut best = 0;
        for (i, &f) in self.fitness.iter().enumerate() {
            if f < self.fitness[best] {
                best = i;
            }
        }
        best
    }

    /// Promotes the best current member to leader if it strictly improves on it.
    pub fn refresh_leader(&mut self) {
        let i = self.argmin();
        if self.fitness[i] < self.best_fitness {
            self.best_fitness = self.fitness[i];
            self.best_position.clone_from(&self.positions[i]);
        }
    }
}

/// One seeded optimizer execution.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunRecord {
    pub algorithm: AlgorithmId,
    pub problem: ProblemId,
    pub dim: usize,
    pub space: SearchSpace,
    pub seed: u64,
    pub best_fitness: f64,
    pub best_position: Vec<f64>,
    /// Best-so-far fitness after each iteration.
    pub trace: Vec<f64>,
    pub evaluations: u64,
    /// Zero unless the caller measured it.
    pub wall_time_s: f64,
    /// Zero unless memory profiling was enabled.
    pub peak_memory_bytes: u64,
}

/// Runs `algorithm` on `problem` restricted to `space`.
///
/// The result is a pure function of the arguments. Cost fields are left at
/// zero; measuring them is up to the caller.
pub fn minimize(
    algorithm: AlgorithmId,
    problem: ProblemId,
    space: &SearchSpace,
    config: &OptimizerConfig,
    seed: u64,
) -> Result<RunRecord> {
    config.validate()?;
    let mut objective = Objective::new(problem, space)?;
    let mut rng = TrialRng::new(seed);
    let mut pop = Population::initialize(&mut objective, config.population_size, &mut rng);
    let iterations = config.iterations;
    let mut trace = Vec::with_capacity(iterations);

    match algorithm {
        AlgorithmId::Woa => {
            for t in 0..iterations {
                woa::update(&mut pop, t, iterations, &config.woa, &mut objective, &mut rng);
                trace.push(pop.best_fitness);
            }
        }
        AlgorithmId::Bsa => {
            let mut historical: Vec<Vec<f64>> = (0..pop.len()).map(|_| space.sample(&mut rng)).collect();
            for _ in 0..iterations {
                bsa::update(&mut pop, &mut historical, &config.bsa, &mut objective, &mut rng);
                trace.push(pop.best_fitness);
            }
        }
        AlgorithmId::Fdo => {
            let mut paces = alloc::vec![alloc::vec![0.0; space.dim()]; pop.len()];
            for _ in 0..iterations {
                fdo::update(&mut pop, &mut paces, &config.fdo, &mut objective, &mut rng);
                trace.push(pop.best_fitness);
            }
        }
        AlgorithmId::Pso => {
            let mut swarm = pso::Swarm::new(&pop, space, &config.pso, &mut rng);
            for _ in 0..iterations {
                pso::update(&mut pop, &mut swarm, &config.pso, &mut objective, &mut rng);
                trace.push(pop.best_fitness);
            }
        }
        AlgorithmId::Ff => {
            for t in 0..iterations {
                let alpha = config.ff.alpha_at(t);
                ff::update(&mut pop, alpha, &config.ff, &mut objective, &mut rng);
                trace.push(pop.best_fitness);
            }
        }
    }

    Ok(RunRecord {
        algorithm,
        problem,
        dim: space.dim(),
        space: space.clone(),
        seed,
        best_fitness: pop.best_fitness,
        best_position: pop.best_position,
        trace,
        evaluations: objective.evaluations(),
        wall_time_s: 0.0,
        peak_memory_bytes: 0,
    })
}
