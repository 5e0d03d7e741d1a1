//! Paired comparison of a baseline algorithm against every rival.
use swarm_arena_core::stats::{tally, wilcoxon_signed_rank, Tally, WilcoxonResult};
use swarm_arena_core::{AlgorithmId, ProblemId};

use crate::error::{ArenaError, Result};
use crate::harness::RunMatrix;

/// Test of the baseline against one rival on one (variant, problem) cell.
/// A `+` verdict means the baseline reached significantly lower fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub variant: String,
    pub problem: ProblemId,
    pub rival: AlgorithmId,
    pub result: WilcoxonResult,
}

/// `+/=/−` counts of the baseline against one rival within one variant.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub rival: AlgorithmId,
    pub variant: String,
    pub tally: Tally,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub baseline: AlgorithmId,
    pub alpha: f64,
    pub rows: Vec<ComparisonRow>,
    pub summary: Vec<SummaryRow>,
}

fn finals(matrix: &RunMatrix, problem: ProblemId, algorithm: AlgorithmId, variant_index: usize) -> Vec<f64> {
    matrix
        .entries()
        .iter()
        .filter(|e| e.key.problem == problem && e.key.algorithm == algorithm && e.key.variant_index == variant_index)
        .map(|e| e.record.best_fitness)
        .collect()
}

/// Wilcoxon signed-rank test of final best fitness, paired by run index.
///
/// Rows are ordered by variant (in plan order), problem and rival; summary
/// rows by rival and variant.
pub fn compare(matrix: &RunMatrix, baseline: AlgorithmId, alpha: f64) -> Result<Comparison> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(ArenaError::Invalid(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if !matrix.entries().iter().any(|e| e.key.algorithm == baseline) {
        return Err(ArenaError::MissingBaseline(baseline));
    }
    let mut algorithms: Vec<AlgorithmId> = matrix.entries().iter().map(|e| e.key.algorithm).collect();
    algorithms.sort();
    algorithms.dedup();
    let rivals: Vec<AlgorithmId> = algorithms.into_iter().filter(|&a| a != baseline).collect();

    let mut cells: Vec<(usize, String, ProblemId)> = matrix
        .entries()
        .iter()
        .map(|e| (e.key.variant_index, e.variant.label(), e.key.problem))
        .collect();
    cells.sort();
    cells.dedup();

    let mut rows = Vec::new();
    for (variant_index, label, problem) in &cells {
        let base = finals(matrix, *problem, baseline, *variant_index);
        for &rival in &rivals {
            let other = finals(matrix, *problem, rival, *variant_index);
            rows.push(ComparisonRow {
                variant: label.clone(),
                problem: *problem,
                rival,
                result: wilcoxon_signed_rank(&base, &other, alpha)?,
            });
        }
    }

    let mut labels: Vec<(usize, String)> = cells.iter().map(|(i, l, _)| (*i, l.clone())).collect();
    labels.dedup();
    let mut summary = Vec::new();
    for &rival in &rivals {
        for (_, label) in &labels {
            let verdicts: Vec<_> = rows
                .iter()
                .filter(|r| r.rival == rival && &r.variant == label)
                .map(|r| r.result.verdict)
                .collect();
            summary.push(SummaryRow {
                rival,
                variant: label.clone(),
                tally: tally(&verdicts),
            });
        }
    }
    Ok(Comparison {
        baseline,
        alpha,
        rows,
        summary,
    })
}
