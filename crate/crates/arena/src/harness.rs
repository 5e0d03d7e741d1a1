//! Execution of evaluation plans into run matrices, and success rates.
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use swarm_arena_core::plan::{Cell, CellKey};
use swarm_arena_core::{
    minimize, success, AlgorithmId, EvaluationPlan, ProblemId, RunRecord, SuccessTolerance, Variant,
};

use crate::error::{ArenaError, Result};
use crate::profiling::measure;

/// One finished trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub key: CellKey,
    pub variant: Variant,
    pub record: RunRecord,
}

/// Every trial of a plan, sorted by key.
#[derive(Debug, Clone, PartialEq)]
pub struct RunMatrix {
    plan: EvaluationPlan,
    entries: Vec<MatrixEntry>,
    created_at: String,
}

impl RunMatrix {
    /// Sorts `entries` and checks them against the plan: one entry per planned
    /// cell, no duplicates, no strangers.
    pub fn new(plan: EvaluationPlan, mut entries: Vec<MatrixEntry>) -> Result<Self> {
        entries.sort_by_key(|e| e.key);
        if let Some(w) = entries.windows(2).find(|w| w[0].key == w[1].key) {
            return Err(ArenaError::Invalid(format!("duplicate trial {:?}", w[0].key)));
        }
        let planned = plan.cells();
        if planned.len() != entries.len() || planned.iter().zip(&entries).any(|(c, e)| c.key != e.key) {
            return Err(ArenaError::Invalid(format!(
                "matrix has {} trials but the plan has {}, or their keys differ",
                entries.len(),
                planned.len()
            )));
        }
        Ok(Self {
            plan,
            entries,
            created_at: chrono::Utc::now().to_rfc3339(),
        })
    }

    pub fn plan(&self) -> &EvaluationPlan {
        &self.plan
    }

    pub fn entries(&self) -> &[MatrixEntry] {
        &self.entries
    }

    pub fn created_at(&self) -> &str {
        &self.created_at
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_success(&self, entry: &MatrixEntry) -> bool {
        success(&entry.record, &self.plan.success_tolerance)
    }
}

/// Receives a notification after every finished trial. Calls may arrive from
/// several worker threads and in any order.
pub trait ProgressSink: Sync {
    fn trial_finished(&self, key: &CellKey, done: usize, total: usize);
}

/// Discards progress.
pub struct Silent;

impl ProgressSink for Silent {
    fn trial_finished(&self, _: &CellKey, _: usize, _: usize) {}
}

/// Logs at `info` level roughly every `every` trials and at the end.
pub struct LogProgress {
    pub every: usize,
}

impl ProgressSink for LogProgress {
    fn trial_finished(&self, _: &CellKey, done: usize, total: usize) {
        if done == total || done.is_multiple_of(self.every.max(1)) {
            log::info!("{done}/{total} trials finished");
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExecOptions {
    /// Worker threads. 1 runs trials on the calling thread.
    pub parallelism: usize,
    pub profile_time: bool,
    /// Implies `profile_time` and forces sequential execution.
    pub profile_memory: bool,
}

impl Default for ExecOptions {
    fn default() -> Self {
        Self {
            parallelism: 1,
            profile_time: false,
            profile_memory: false,
        }
    }
}

fn run_cell(plan: &EvaluationPlan, cell: &Cell, opts: &ExecOptions) -> Result<MatrixEntry> {
    let trial = || -> Result<RunRecord, swarm_arena_core::Error> {
        let space = cell.variant.space(cell.key.problem)?;
        minimize(cell.key.algorithm, cell.key.problem, &space, &plan.config, cell.seed)
    };
    let (record, cost) = measure(opts.profile_time || opts.profile_memory, opts.profile_memory, trial);
    let mut record = record.map_err(|source| ArenaError::Trial { key: cell.key, source })?;
    record.wall_time_s = cost.wall_time_s;
    record.peak_memory_bytes = cost.peak_memory_bytes;
    Ok(MatrixEntry {
        key: cell.key,
        variant: cell.variant,
        record,
    })
}

/// Runs every planned trial. The result depends only on the plan, never on
/// the worker count or completion order; cost fields stay zero unless
/// profiling is requested.
pub fn execute(plan: &EvaluationPlan, opts: &ExecOptions, progress: &dyn ProgressSink) -> Result<RunMatrix> {
    plan.validate()?;
    let cells = plan.cells();
    let total = cells.len();
    let done = AtomicUsize::new(0);
    let step = |cell: &Cell| {
        let entry = run_cell(plan, cell, opts)?;
        progress.trial_finished(&cell.key, done.fetch_add(1, Ordering::Relaxed) + 1, total);
        Ok(entry)
    };

    let entries: Result<Vec<MatrixEntry>> = if opts.parallelism <= 1 || opts.profile_memory {
        cells.iter().map(step).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.parallelism)
            .build()
            .map_err(|e| ArenaError::Invalid(format!("cannot start worker pool: {e}")))?
            .install(|| cells.par_iter().map(step).collect())
    };
    RunMatrix::new(plan.clone(), entries?)
}

/// Success fraction of one (problem, algorithm, variant) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SuccessRow {
    pub problem: ProblemId,
    pub algorithm: AlgorithmId,
    pub variant_index: usize,
    pub variant: Variant,
    pub successes: usize,
    pub runs: usize,
}

impl SuccessRow {
    pub fn fraction(&self) -> f64 {
        self.successes as f64 / self.runs as f64
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuccessTable {
    pub rows: Vec<SuccessRow>,
}

impl SuccessTable {
    pub fn extend(&mut self, other: SuccessTable) {
        self.rows.extend(other.rows);
    }

    /// Whether any algorithm succeeded at least once, per (problem, variant).
    pub fn minimized_by_any(&self) -> Vec<(ProblemId, Variant, bool)> {
        let mut out: Vec<(ProblemId, Variant, bool)> = Vec::new();
        for r in &self.rows {
            match out.iter_mut().find(|(p, v, _)| *p == r.problem && *v == r.variant) {
                Some(slot) => slot.2 |= r.successes > 0,
                None => out.push((r.problem, r.variant, r.successes > 0)),
            }
        }
        out
    }

    /// Pooled success fraction per problem over algorithms and variants.
    pub fn by_problem(&self) -> BTreeMap<ProblemId, f64> {
        pooled(self.rows.iter().map(|r| (r.problem, r)))
    }

    /// Pooled success fraction per algorithm over problems and variants.
    pub fn by_algorithm(&self) -> BTreeMap<AlgorithmId, f64> {
        pooled(self.rows.iter().map(|r| (r.algorithm, r)))
    }
}

fn pooled<'a, K: Ord>(rows: impl Iterator<Item = (K, &'a SuccessRow)>) -> BTreeMap<K, f64> {
    let mut counts: BTreeMap<K, (usize, usize)> = BTreeMap::new();
    for (k, r) in rows {
        let c = counts.entry(k).or_default();
        c.0 += r.successes;
        c.1 += r.runs;
    }
    counts.into_iter().map(|(k, (s, n))| (k, s as f64 / n as f64)).collect()
}

/// Success counts of every (problem, algorithm, variant) cell under `tol`.
pub fn success_rates(matrix: &RunMatrix, tol: &SuccessTolerance) -> SuccessTable {
    let mut rows: Vec<SuccessRow> = Vec::new();
    for e in matrix.entries() {
        let hit = success(&e.record, tol) as usize;
        match rows.last_mut() {
            Some(r)
                if r.problem == e.key.problem
                    && r.algorithm == e.key.algorithm
                    && r.variant_index == e.key.variant_index =>
            {
                r.successes += hit;
                r.runs += 1;
            }
            _ => rows.push(SuccessRow {
                problem: e.key.problem,
                algorithm: e.key.algorithm,
                variant_index: e.key.variant_index,
                variant: e.variant,
                successes: hit,
                runs: 1,
            }),
        }
    }
    SuccessTable { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use swarm_arena_core::{plan_evaluation, EvaluationKind, PlanOverrides};

    fn smoke() -> EvaluationPlan {
        plan_evaluation(
            EvaluationKind::Eval2,
            &PlanOverrides {
                problems: Some(vec![ProblemId::P14]),
                algorithms: Some(vec![AlgorithmId::Woa, AlgorithmId::Pso]),
                regions: Some(vec![swarm_arena_core::plan::Region::R1]),
                runs: Some(2),
                iterations: Some(50),
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn smoke_plan_counts() {
        let m = execute(&smoke(), &ExecOptions::default(), &Silent).unwrap();
        assert_eq!(m.len(), 4);
        assert!(m.entries().iter().all(|e| e.record.trace.len() == 50));
        assert!(m
            .entries()
            .iter()
            .all(|e| e.record.wall_time_s == 0.0 && e.record.peak_memory_bytes == 0));
    }

    #[test]
    fn parallelism_does_not_change_results() {
        let plan = smoke();
        let a = execute(&plan, &ExecOptions::default(), &Silent).unwrap();
        let b = execute(
            &plan,
            &ExecOptions {
                parallelism: 8,
                ..Default::default()
            },
            &Silent,
        )
        .unwrap();
        let c = execute(&plan, &ExecOptions::default(), &LogProgress { every: 1 }).unwrap();
        assert_eq!(a.entries(), b.entries());
        assert_eq!(a.entries(), c.entries());
    }

    #[test]
    fn profiling_only_touches_cost_fields() {
        let plan = smoke();
        let plain = execute(&plan, &ExecOptions::default(), &Silent).unwrap();
        let opts = ExecOptions {
            parallelism: 4,
            profile_time: true,
            profile_memory: true,
        };
        let profiled = execute(&plan, &opts, &Silent).unwrap();
        for (a, b) in plain.entries().iter().zip(profiled.entries()) {
            let mut b = b.clone();
            assert!(b.record.wall_time_s > 0.0);
            if crate::profiling::memory_instrumented() {
                assert!(b.record.peak_memory_bytes > 0);
            }
            b.record.wall_time_s = 0.0;
            b.record.peak_memory_bytes = 0;
            assert_eq!(a, &b);
        }
    }

    #[test]
    fn rejects_incomplete_matrix() {
        let plan = smoke();
        let m = execute(&plan, &ExecOptions::default(), &Silent).unwrap();
        let mut entries = m.entries().to_vec();
        entries.pop();
        assert!(RunMatrix::new(plan.clone(), entries.clone()).is_err());
        entries.push(entries[0].clone());
        assert!(RunMatrix::new(plan, entries).is_err());
    }

    #[test]
    fn success_fractions_and_flags() {
        let m = execute(&smoke(), &ExecOptions::default(), &Silent).unwrap();
        let strict = success_rates(&m, &SuccessTolerance { abs: 0.0, rel: 0.0 });
        let loose = success_rates(&m, &SuccessTolerance { abs: 1e9, rel: 0.0 });
        assert_eq!(loose.rows.len(), 2);
        for (s, l) in strict.rows.iter().zip(&loose.rows) {
            assert!(s.fraction() <= l.fraction());
            assert_eq!(l.fraction(), 1.0);
        }
        assert_eq!(loose.minimized_by_any().len(), 1);
        assert!(loose.minimized_by_any()[0].2);
        assert_eq!(loose.by_problem()[&ProblemId::P14], 1.0);
        assert_eq!(loose.by_algorithm().len(), 2);
    }
}
