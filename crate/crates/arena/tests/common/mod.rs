#![allow(dead_code)]

use swarm_arena::{MatrixEntry, RunMatrix};
use swarm_arena_core::plan::{CellKey, Region};
use swarm_arena_core::{
    plan_evaluation, AlgorithmId, EvaluationKind, EvaluationPlan, PlanOverrides, ProblemId, RunRecord,
};

/// An Eval2 plan restricted to R1 with the given axes.
pub fn plan(problems: &[ProblemId], algorithms: &[AlgorithmId], runs: usize) -> EvaluationPlan {
    plan_evaluation(
        EvaluationKind::Eval2,
        &PlanOverrides {
            problems: Some(problems.to_vec()),
            algorithms: Some(algorithms.to_vec()),
            regions: Some(vec![Region::R1]),
            runs: Some(runs),
            iterations: Some(1),
            ..Default::default()
        },
    )
    .unwrap()
}

/// A matrix over `plan` whose scalar fields come from `fill(key)`:
/// (best_fitness, wall_time_s, peak_memory_bytes).
pub fn synthetic(plan: EvaluationPlan, mut fill: impl FnMut(&CellKey) -> (f64, f64, u64)) -> RunMatrix {
    let entries = plan
        .cells()
        .into_iter()
        .map(|cell| {
            let (best, time, mem) = fill(&cell.key);
            let space = cell.variant.space(cell.key.problem).unwrap();
            MatrixEntry {
                key: cell.key,
                variant: cell.variant,
                record: RunRecord {
                    algorithm: cell.key.algorithm,
                    problem: cell.key.problem,
                    dim: space.dim(),
                    space,
                    seed: cell.seed,
                    best_fitness: best,
                    best_position: vec![0.0; cell.variant.dim()],
                    trace: vec![best],
                    evaluations: 60,
                    wall_time_s: time,
                    peak_memory_bytes: mem,
                },
            }
        })
        .collect();
    RunMatrix::new(plan, entries).unwrap()
}
