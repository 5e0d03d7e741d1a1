//! CSV and JSON result files.
//!
//! | file | header |
//! |---|---|
//! | `runs.csv` | `problem,algorithm,variant,run,seed,best_fitness,evaluations,wall_time_s,peak_memory_bytes,success` |
//! | `traces/trace_<problem>_<algorithm>_<variant>_<run>.csv` | `iteration,best_so_far` |
//! | `success.csv` | `problem,algorithm,variant,success_fraction` |
//! | `minimized.csv` | `problem,variant,minimized_by_any` |
//! | `costs.csv` | `problem,algorithm,mean_wall_time_s,mean_peak_memory_bytes,time_winner,memory_winner` |
//! | `wilcoxon.csv` | `variant,problem,rival,p_value,t_plus,t_minus,verdict` |
//! | `summary.csv` | `rival,variant,plus,equal,minus` |
//! | `stats.csv` | `problem,algorithm,variant,mean,std,best,worst,avg_time_s,n_success,n_fail` |
//! | `convergence.csv` | `problem,algorithm,variant,iteration,mean_best_so_far` |
//!
//! Floats are written in shortest round-trip form, so every scalar parses
//! back to the identical value. `plan.json` echoes the plan so that the other
//! subcommands can reload a finished run.
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use swarm_arena_core::stats::descriptive;
use swarm_arena_core::{AlgorithmId, EvaluationPlan, ProblemId, RunRecord};

use crate::compare::Comparison;
use crate::error::{csv_err, io_err, ArenaError, Result};
use crate::harness::{MatrixEntry, RunMatrix, SuccessTable};
use crate::profiling::{CostMetric, CostReport};

pub const RUNS_FILE: &str = "runs.csv";
pub const PLAN_FILE: &str = "plan.json";
pub const TRACE_DIR: &str = "traces";

pub fn write_csv<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<PathBuf> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    for row in rows {
        w.serialize(row).map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))?;
    Ok(path.to_path_buf())
}

pub fn read_csv<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    r.deserialize().map(|row| row.map_err(csv_err(path))).collect()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<PathBuf> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| ArenaError::Json {
        path: path.into(),
        source,
    })?;
    text.push('\n');
    fs::write(path, text).map_err(io_err(path))?;
    Ok(path.to_path_buf())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|source| ArenaError::Json {
        path: path.into(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub problem: ProblemId,
    pub algorithm: AlgorithmId,
    pub variant: String,
    pub run: usize,
    pub seed: u64,
    pub best_fitness: f64,
    pub evaluations: u64,
    pub wall_time_s: f64,
    pub peak_memory_bytes: u64,
    pub success: bool,
}

impl RunRow {
    pub fn new(matrix: &RunMatrix, e: &MatrixEntry) -> Self {
        Self {
            problem: e.key.problem,
            algorithm: e.key.algorithm,
            variant: e.variant.label(),
            run: e.key.run,
            seed: e.record.seed,
            best_fitness: e.record.best_fitness,
            evaluations: e.record.evaluations,
            wall_time_s: e.record.wall_time_s,
            peak_memory_bytes: e.record.peak_memory_bytes,
            success: matrix.is_success(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub iteration: usize,
    pub best_so_far: f64,
}

pub fn trace_file_name(e: &MatrixEntry) -> String {
    format!(
        "trace_{}_{}_{}_{}.csv",
        e.key.problem,
        e.key.algorithm,
        e.variant.label(),
        e.key.run
    )
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(io_err(dir))
}

/// Writes `plan.json`, `runs.csv` and one trace file per trial. Returns the
/// written paths.
pub fn emit_runs(matrix: &RunMatrix, dir: &Path) -> Result<Vec<PathBuf>> {
    create_dir(&dir.join(TRACE_DIR))?;
    let mut written = vec![write_json(&dir.join(PLAN_FILE), matrix.plan())?];
    let rows = matrix.entries().iter().map(|e| RunRow::new(matrix, e));
    written.push(write_csv(&dir.join(RUNS_FILE), rows)?);
    for e in matrix.entries() {
        let path = dir.join(TRACE_DIR).join(trace_file_name(e));
        let rows = e.record.trace.iter().enumerate().map(|(t, &v)| TraceRow {
            iteration: t + 1,
            best_so_far: v,
        });
        written.push(write_csv(&path, rows)?);
    }
    Ok(written)
}

/// Reloads a matrix written by [`emit_runs`]. Best positions are not stored
/// and come back empty; traces are read only when `with_traces` is set.
pub fn load_matrix(dir: &Path, with_traces: bool) -> Result<RunMatrix> {
    let plan: EvaluationPlan = read_json(&dir.join(PLAN_FILE))?;
    let runs_path = dir.join(RUNS_FILE);
    let rows: Vec<RunRow> = read_csv(&runs_path)?;
    let mut entries = Vec::with_capacity(rows.len());
    for (line, row) in rows.into_iter().enumerate() {
        let bad = |message: String| ArenaError::Format {
            path: runs_path.clone(),
            line: line as u64 + 2,
            message,
        };
        let (variant_index, variant) = plan
            .variants_for(row.problem)
            .into_iter()
            .find(|(_, v)| v.label() == row.variant)
            .ok_or_else(|| bad(format!("variant {} is not planned for {}", row.variant, row.problem)))?;
        let key = swarm_arena_core::plan::CellKey {
            problem: row.problem,
            algorithm: row.algorithm,
            variant_index,
            run: row.run,
        };
        let mut entry = MatrixEntry {
            key,
            variant,
            record: RunRecord {
                algorithm: row.algorithm,
                problem: row.problem,
                dim: variant.dim(),
                space: variant.space(row.problem)?,
                seed: row.seed,
                best_fitness: row.best_fitness,
                best_position: Vec::new(),
                trace: Vec::new(),
                evaluations: row.evaluations,
                wall_time_s: row.wall_time_s,
                peak_memory_bytes: row.peak_memory_bytes,
            },
        };
        if with_traces {
            let path = dir.join(TRACE_DIR).join(trace_file_name(&entry));
            let trace: Vec<TraceRow> = read_csv(&path)?;
            entry.record.trace = trace.into_iter().map(|r| r.best_so_far).collect();
        }
        entries.push(entry);
    }
    RunMatrix::new(plan, entries)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessCsvRow {
    pub problem: ProblemId,
    pub algorithm: AlgorithmId,
    pub variant: String,
    pub success_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizedCsvRow {
    pub problem: ProblemId,
    pub variant: String,
    pub minimized_by_any: bool,
}

/// Writes `success.csv` and `minimized.csv`.
pub fn emit_success(table: &SuccessTable, dir: &Path) -> Result<Vec<PathBuf>> {
    let rows = table.rows.iter().map(|r| SuccessCsvRow {
        problem: r.problem,
        algorithm: r.algorithm,
        variant: r.variant.label(),
        success_fraction: r.fraction(),
    });
    let flags = table
        .minimized_by_any()
        .into_iter()
        .map(|(problem, v, hit)| MinimizedCsvRow {
            problem,
            variant: v.label(),
            minimized_by_any: hit,
        });
    Ok(vec![
        write_csv(&dir.join("success.csv"), rows)?,
        write_csv(&dir.join("minimized.csv"), flags)?,
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostCsvRow {
    pub problem: ProblemId,
    pub algorithm: AlgorithmId,
    pub mean_wall_time_s: f64,
    pub mean_peak_memory_bytes: f64,
    pub time_winner: AlgorithmId,
    pub memory_winner: AlgorithmId,
}

pub fn cost_rows(report: &CostReport) -> Vec<CostCsvRow> {
    let mut out = Vec::new();
    for time in report.rows.iter().filter(|r| r.metric == CostMetric::WallTime) {
        let memory = report
            .row(time.problem, CostMetric::PeakMemory)
            .expect("both metrics are reported for every problem");
        for (&(algorithm, t), &(_, m)) in time.means.iter().zip(&memory.means) {
            out.push(CostCsvRow {
                problem: time.problem,
                algorithm,
                mean_wall_time_s: t,
                mean_peak_memory_bytes: m,
                time_winner: time.winner,
                memory_winner: memory.winner,
            });
        }
    }
    out
}

pub fn emit_costs(report: &CostReport, dir: &Path) -> Result<PathBuf> {
    write_csv(&dir.join("costs.csv"), cost_rows(report))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonCsvRow {
    pub variant: String,
    pub problem: ProblemId,
    pub rival: AlgorithmId,
    pub p_value: f64,
    pub t_plus: f64,
    pub t_minus: f64,
    pub verdict: char,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryCsvRow {
    pub rival: AlgorithmId,
    pub variant: String,
    pub plus: usize,
    pub equal: usize,
    pub minus: usize,
}

/// Writes `wilcoxon.csv` and `summary.csv`.
pub fn emit_comparison(cmp: &Comparison, dir: &Path) -> Result<Vec<PathBuf>> {
    let rows = cmp.rows.iter().map(|r| WilcoxonCsvRow {
        variant: r.variant.clone(),
        problem: r.problem,
        rival: r.rival,
        p_value: r.result.p_value,
        t_plus: r.result.t_plus,
        t_minus: r.result.t_minus,
        verdict: r.result.verdict.symbol(),
    });
    let summary = cmp.summary.iter().map(|s| SummaryCsvRow {
        rival: s.rival,
        variant: s.variant.clone(),
        plus: s.tally.plus,
        equal: s.tally.equal,
        minus: s.tally.minus,
    });
    Ok(vec![
        write_csv(&dir.join("wilcoxon.csv"), rows)?,
        write_csv(&dir.join("summary.csv"), summary)?,
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsCsvRow {
    pub problem: ProblemId,
    pub algorithm: AlgorithmId,
    pub variant: String,
    pub mean: f64,
    pub std: f64,
    pub best: f64,
    pub worst: f64,
    pub avg_time_s: f64,
    pub n_success: usize,
    pub n_fail: usize,
}

/// Groups consecutive entries sharing (problem, algorithm, variant).
fn groups(matrix: &RunMatrix) -> Vec<&[MatrixEntry]> {
    matrix
        .entries()
        .chunk_by(|a, b| {
            (a.key.problem, a.key.algorithm, a.key.variant_index)
                == (b.key.problem, b.key.algorithm, b.key.variant_index)
        })
        .collect()
}

pub fn stats_rows(matrix: &RunMatrix) -> Result<Vec<StatsCsvRow>> {
    groups(matrix)
        .into_iter()
        .map(|g| {
            let values: Vec<f64> = g.iter().map(|e| e.record.best_fitness).collect();
            let times: Vec<f64> = g.iter().map(|e| e.record.wall_time_s).collect();
            let flags: Vec<bool> = g.iter().map(|e| matrix.is_success(e)).collect();
            let d = descriptive(&values, &times, &flags)?;
            Ok(StatsCsvRow {
                problem: g[0].key.problem,
                algorithm: g[0].key.algorithm,
                variant: g[0].variant.label(),
                mean: d.mean,
                std: d.std,
                best: d.best,
                worst: d.worst,
                avg_time_s: d.avg_time_s,
                n_success: d.n_success,
                n_fail: d.n_fail,
            })
        })
        .collect()
}

pub fn emit_stats(matrix: &RunMatrix, dir: &Path) -> Result<PathBuf> {
    write_csv(&dir.join("stats.csv"), stats_rows(matrix)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceCsvRow {
    pub problem: ProblemId,
    pub algorithm: AlgorithmId,
    pub variant: String,
    pub iteration: usize,
    pub mean_best_so_far: f64,
}

/// Mean best-so-far curve over runs of every (problem, algorithm, variant).
pub fn convergence_rows(matrix: &RunMatrix) -> Vec<ConvergenceCsvRow> {
    let mut out = Vec::new();
    for g in groups(matrix) {
        let len = g.iter().map(|e| e.record.trace.len()).min().unwrap_or(0);
        for t in 0..len {
            let mean = g.iter().map(|e| e.record.trace[t]).sum::<f64>() / g.len() as f64;
            out.push(ConvergenceCsvRow {
                problem: g[0].key.problem,
                algorithm: g[0].key.algorithm,
                variant: g[0].variant.label(),
                iteration: t + 1,
                mean_best_so_far: mean,
            });
        }
    }
    out
}

pub fn emit_convergence(matrix: &RunMatrix, dir: &Path) -> Result<PathBuf> {
    write_csv(&dir.join("convergence.csv"), convergence_rows(matrix))
}
