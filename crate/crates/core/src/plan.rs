//! Evaluation plans, per-trial seeds and the success criterion.
//!
//! * Evaluation 1 runs every problem in its default space. Variable-dimension
//!   problems are run at each requested dimension (10, 30 and 60 by default);
//!   fixed-dimension problems run once at their native dimension.
//! * Evaluation 2 runs every problem in two dimensions inside each of the
//!   regions R1 `[-5, 5]`, R2 `[-250, 250]` and R3 `[-500, 500]`.
//! * Evaluation 3 performs no runs of its own. It aggregates success rates
//!   over completed Evaluation 1 and 2 results; [`EvaluationPlan::components`]
//!   names them.
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use libm::fabs;

use crate::benchfns::{default_space, ProblemId};
use crate::error::{Error, Result};
use crate::optimizers::{AlgorithmId, OptimizerConfig, RunRecord};
use crate::space::SearchSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum EvaluationKind {
    Eval1,
    Eval2,
    Eval3,
}

impl EvaluationKind {
    pub fn number(self) -> u8 {
        match self {
            EvaluationKind::Eval1 => 1,
            EvaluationKind::Eval2 => 2,
            EvaluationKind::Eval3 => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(EvaluationKind::Eval1),
            2 => Some(EvaluationKind::Eval2),
            3 => Some(EvaluationKind::Eval3),
            _ => None,
        }
    }
}

/// The symmetric boxes of Evaluation 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Region {
    R1,
    R2,
    R3,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::R1, Region::R2, Region::R3];

    pub fn half_width(self) -> f64 {
        match self {
            Region::R1 => 5.0,
            Region::R2 => 250.0,
            Region::R3 => 500.0,
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::R1 => "R1",
            Region::R2 => "R2",
            Region::R3 => "R3",
        };
        f.write_str(s)
    }
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Region::ALL
            .into_iter()
            .find(|r| format!("{r}").eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownName {
                kind: "region",
                name: s.into(),
            })
    }
}

/// The dimension-or-space axis of a run matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Variant {
    /// The problem's default box at `dim` coordinates.
    DefaultSpace { dim: usize },
    /// A shared region at `dim` coordinates.
    Region { region: Region, dim: usize },
}

impl Variant {
    pub fn dim(&self) -> usize {
        match *self {
            Variant::DefaultSpace { dim } | Variant::Region { dim, .. } => dim,
        }
    }

    /// Short label used in file names and CSV columns: `dim30`, `R2`.
    pub fn label(&self) -> String {
        match self {
            Variant::DefaultSpace { dim } => format!("dim{dim}"),
            Variant::Region { region, .. } => format!("{region}"),
        }
    }

    pub fn space(&self, problem: ProblemId) -> Result<SearchSpace> {
        match *self {
            Variant::DefaultSpace { dim } => default_space(problem, dim),
            Variant::Region { region, dim } => {
                problem.spec().check_dim(dim)?;
                let h = region.half_width();
                SearchSpace::uniform(-h, h, dim)
            }
        }
    }
}

/// Absolute and relative closeness to the global minimum that counts as a
/// successful minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SuccessTolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for SuccessTolerance {
    fn default() -> Self {
        Self { abs: 1e-6, rel: 1e-6 }
    }
}

impl SuccessTolerance {
    pub fn accepts(&self, best: f64, global_minimum: f64) -> bool {
        fabs(best - global_minimum) <= self.abs + self.rel * fabs(global_minimum)
    }
}

/// Whether `record` reached its problem's global minimum within `tol`.
pub fn success(record: &RunRecord, tol: &SuccessTolerance) -> bool {
    let minimum = record.problem.spec().minimum_at(record.dim);
    tol.accepts(record.best_fitness, minimum)
}

/// Identifies one run in a matrix. Ordering is the matrix order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CellKey {
    pub problem: ProblemId,
    pub algorithm: AlgorithmId,
    pub variant_index: usize,
    pub run: usize,
}

/// A planned run.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub key: CellKey,
    pub variant: Variant,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvaluationPlan {
    pub kind: EvaluationKind,
    pub algorithms: Vec<AlgorithmId>,
    pub problems: Vec<ProblemId>,
    /// Dimensions for variable-dimension problems (Evaluations 1 and 3).
    pub dims: Vec<usize>,
    /// Regions at dimension 2 (Evaluations 2 and 3).
    pub regions: Vec<Region>,
    pub runs: usize,
    pub config: OptimizerConfig,
    pub success_tolerance: SuccessTolerance,
    pub master_seed: u64,
}

/// Optional replacements for plan defaults.
#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct PlanOverrides {
    pub algorithms: Option<Vec<AlgorithmId>>,
    pub problems: Option<Vec<ProblemId>>,
    pub dims: Option<Vec<usize>>,
    pub regions: Option<Vec<Region>>,
    pub runs: Option<usize>,
    pub iterations: Option<usize>,
    pub population_size: Option<usize>,
    pub master_seed: Option<u64>,
    pub tol_abs: Option<f64>,
    pub tol_rel: Option<f64>,
}

impl PlanOverrides {
    /// Fields set in `other` win.
    pub fn merged_with(mut self, other: &PlanOverrides) -> Self {
        macro_rules! take {
            ($($f:ident),*) => {$(
                if other.$f.is_some() {
                    self.$f = other.$f.clone();
                }
            )*};
        }
        take!(
            algorithms,
            problems,
            dims,
            regions,
            runs,
            iterations,
            population_size,
            master_seed,
            tol_abs,
            tol_rel
        );
        self
    }
}

pub const DEFAULT_DIMS: [usize; 3] = [10, 30, 60];
pub const EVAL2_DIM: usize = 2;

/// Builds the plan for `kind` with defaults replaced by `overrides`.
pub fn plan_evaluation(kind: EvaluationKind, overrides: &PlanOverrides) -> Result<EvaluationPlan> {
    let mut config = OptimizerConfig::default();
    if let Some(n) = overrides.population_size {
        config.population_size = n;
    }
    if let Some(n) = overrides.iterations {
        config.iterations = n;
    }
    let (dims, regions) = match kind {
        EvaluationKind::Eval1 => (DEFAULT_DIMS.to_vec(), Vec::new()),
        EvaluationKind::Eval2 => (Vec::new(), Region::ALL.to_vec()),
        EvaluationKind::Eval3 => (DEFAULT_DIMS.to_vec(), Region::ALL.to_vec()),
    };
    let plan = EvaluationPlan {
        kind,
        algorithms: overrides
            .algorithms
            .clone()
            .unwrap_or_else(|| AlgorithmId::ALL.to_vec()),
        problems: overrides.problems.clone().unwrap_or_else(|| ProblemId::ALL.to_vec()),
        dims: match (kind, &overrides.dims) {
            (EvaluationKind::Eval2, _) => dims,
            (_, Some(d)) => d.clone(),
            (_, None) => dims,
        },
        regions: match (kind, &overrides.regions) {
            (EvaluationKind::Eval1, _) => regions,
            (_, Some(r)) => r.clone(),
            (_, None) => regions,
        },
        runs: overrides.runs.unwrap_or(30),
        config,
        success_tolerance: SuccessTolerance {
            abs: overrides.tol_abs.unwrap_or(1e-6),
            rel: overrides.tol_rel.unwrap_or(1e-6),
        },
        master_seed: overrides.master_seed.unwrap_or(0),
    };
    plan.validate()?;
    Ok(plan)
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidOverride(msg.into())
}

fn check_unique<T: PartialEq + fmt::Debug>(what: &str, items: &[T]) -> Result<()> {
    if items.is_empty() {
        return Err(bad(format!("{what} list is empty")));
    }
    for (i, x) in items.iter().enumerate() {
        if items[..i].contains(x) {
            return Err(bad(format!("{what} {x:?} listed twice")));
        }
    }
    Ok(())
}

impl EvaluationPlan {
    pub fn validate(&self) -> Result<()> {
        if self.runs < 1 {
            return Err(bad("runs must be at least 1"));
        }
        check_unique("algorithm", &self.algorithms)?;
        check_unique("problem", &self.problems)?;
        if matches!(self.kind, EvaluationKind::Eval1 | EvaluationKind::Eval3) {
            check_unique("dimension", &self.dims)?;
            if self.dims.contains(&0) {
                return Err(bad("dimensions must be positive"));
            }
        }
        if matches!(self.kind, EvaluationKind::Eval2 | EvaluationKind::Eval3) {
            check_unique("region", &self.regions)?;
        }
        let t = &self.success_tolerance;
        if !(t.abs >= 0.0 && t.rel >= 0.0 && t.abs.is_finite() && t.rel.is_finite()) {
            return Err(bad("tolerances must be finite and non-negative"));
        }
        self.config.validate().map_err(|e| bad(format!("{e}")))
    }

    /// The plans whose runs this plan consists of: itself for Evaluations 1
    /// and 2, the Evaluation 1 and 2 plans for Evaluation 3.
    pub fn components(&self) -> Vec<EvaluationPlan> {
        match self.kind {
            EvaluationKind::Eval3 => vec![
                EvaluationPlan {
                    kind: EvaluationKind::Eval1,
                    regions: Vec::new(),
                    ..self.clone()
                },
                EvaluationPlan {
                    kind: EvaluationKind::Eval2,
                    dims: Vec::new(),
                    ..self.clone()
                },
            ],
            _ => vec![self.clone()],
        }
    }

    /// Variants planned for `problem`, with their indices.
    ///
    /// In Evaluation 1 a fixed-dimension problem has the single variant
    /// `(0, native dimension)`.
    pub fn variants_for(&self, problem: ProblemId) -> Vec<(usize, Variant)> {
        match self.kind {
            EvaluationKind::Eval1 => match problem.spec().native_dim() {
                Some(dim) => vec![(0, Variant::DefaultSpace { dim })],
                None => self
                    .dims
                    .iter()
                    .enumerate()
                    .map(|(i, &dim)| (i, Variant::DefaultSpace { dim }))
                    .collect(),
            },
            EvaluationKind::Eval2 => self
                .regions
                .iter()
                .enumerate()
                .map(|(i, &region)| (i, Variant::Region { region, dim: EVAL2_DIM }))
                .collect(),
            EvaluationKind::Eval3 => Vec::new(),
        }
    }

    /// Every planned run in matrix order. Empty for Evaluation 3.
    pub fn cells(&self) -> Vec<Cell> {
        let mut problems = self.problems.clone();
        problems.sort();
        let mut algorithms = self.algorithms.clone();
        algorithms.sort();
        let mut cells = Vec::with_capacity(self.cell_count());
        for &problem in &problems {
            let variants = self.variants_for(problem);
            for &algorithm in &algorithms {
                for &(variant_index, variant) in &variants {
                    for run in 0..self.runs {
                        cells.push(Cell {
                            key: CellKey {
                                problem,
                                algorithm,
                                variant_index,
                                run,
                            },
                            variant,
                            seed: trial_seed(self.master_seed, algorithm, problem, variant_index, run),
                        });
                    }
                }
            }
        }
        cells
    }

    pub fn cell_count(&self) -> usize {
        self.problems.iter().map(|&p| self.variants_for(p).len()).sum::<usize>() * self.algorithms.len() * self.runs
    }
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 step: add the golden gamma, then apply the output finalizer.
pub const fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one trial.
///
/// `h = splitmix64(master)`, then for each of the algorithm index, problem
/// index (0 for P1), variant index and run index in that order,
/// `h = splitmix64(h ^ value)`.
pub fn trial_seed(
    master_seed: u64,
    algorithm: AlgorithmId,
    problem: ProblemId,
    variant_index: usize,
    run_index: usize,
) -> u64 {
    [
        algorithm.index() as u64,
        problem.index() as u64,
        variant_index as u64,
        run_index as u64,
    ]
    .into_iter()
    .fold(splitmix64(master_seed), |h, v| splitmix64(h ^ v))
}
