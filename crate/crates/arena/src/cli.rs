//! Command-line front end.
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use swarm_arena_core::{plan_evaluation, AlgorithmId, EvaluationKind, EvaluationPlan, PlanOverrides, ProblemId};

use crate::compare::compare;
use crate::config::ConfigFile;
use crate::error::{ArenaError, Result};
use crate::harness::{execute, success_rates, ExecOptions, LogProgress, MatrixEntry, RunMatrix, SuccessTable};
use crate::manifest::{now, RunManifest};
use crate::output::{self, load_matrix, PLAN_FILE};
use crate::profiling::{cost_report_of, memory_instrumented};

/// Desk-scale defaults; `--full` switches to 30 runs of 2000 iterations.
pub const DESK_RUNS: usize = 5;
pub const DESK_ITERATIONS: usize = 200;

#[derive(Debug, Parser)]
#[command(
    name = "swarm-arena",
    version,
    about = "Seeded side-by-side benchmarking of swarm metaheuristics"
)]
pub struct Cli {
    /// Output directory.
    #[arg(long, global = true, env = "SWARM_ARENA_OUT", default_value = "results")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Execute an evaluation and write runs, traces, success rates and costs.
    Run(RunArgs),
    /// Descriptive statistics of finished runs.
    Stats,
    /// Wilcoxon signed-rank comparison of a baseline against every rival.
    Compare(CompareArgs),
    /// Success-ratio and cost tables, optionally pooled over several result directories.
    Report(ReportArgs),
    /// Mean best-so-far curves.
    Convergence,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Evaluation: 1 (dimensions), 2 (regions) or 3 (both, plus success tables).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub eval: Option<u8>,
    #[arg(long, value_delimiter = ',')]
    pub algorithms: Option<Vec<AlgorithmId>>,
    #[arg(long, value_delimiter = ',')]
    pub problems: Option<Vec<ProblemId>>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub runs: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub iters: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub pop: Option<u64>,
    /// Master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tol_abs: Option<f64>,
    #[arg(long)]
    pub tol_rel: Option<f64>,
    /// Record wall time per trial.
    #[arg(long)]
    pub profile_time: bool,
    /// Record peak memory and wall time per trial; trials run sequentially.
    #[arg(long)]
    pub profile_memory: bool,
    /// Worker threads (default: all cores).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub parallel: Option<u64>,
    /// Full-scale profile: 30 runs of 2000 iterations.
    #[arg(long)]
    pub full: bool,
    /// TOML configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long, default_value = "woa")]
    pub baseline: AlgorithmId,
    /// Significance level.
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    /// Evaluation whose tables to build. 3 pools every input.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub eval: Option<u8>,
    /// Result directories to read (default: those under --out).
    #[arg(long, value_delimiter = ',')]
    pub inputs: Option<Vec<PathBuf>>,
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

impl RunArgs {
    fn overrides(&self) -> PlanOverrides {
        PlanOverrides {
            algorithms: self.algorithms.clone(),
            problems: self.problems.clone(),
            runs: self.runs.map(|n| n as usize),
            iterations: self.iters.map(|n| n as usize),
            population_size: self.pop.map(|n| n as usize),
            master_seed: self.seed,
            tol_abs: self.tol_abs,
            tol_rel: self.tol_rel,
            ..Default::default()
        }
    }

    /// Resolves profile defaults, the config file and flags into a plan.
    /// Invalid combinations exit with a usage error.
    pub fn plan(&self) -> Result<(EvaluationPlan, Option<usize>)> {
        let file = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let full = self.full || file.full.unwrap_or(false);
        let profile = if full {
            PlanOverrides::default()
        } else {
            PlanOverrides {
                runs: Some(DESK_RUNS),
                iterations: Some(DESK_ITERATIONS),
                ..Default::default()
            }
        };
        let overrides = profile.merged_with(&file.plan).merged_with(&self.overrides());
        let number = self.eval.or(file.eval).unwrap_or(1);
        let kind =
            EvaluationKind::from_number(number).unwrap_or_else(|| usage_error(format!("no evaluation {number}")));
        let mut plan = plan_evaluation(kind, &overrides).unwrap_or_else(|e| usage_error(e));
        file.apply_params(&mut plan.config);
        plan.validate().unwrap_or_else(|e| usage_error(e));
        let parallel = self.parallel.map(|n| n as usize).or(file.parallel);
        Ok((plan, parallel))
    }
}

pub fn run(cli: Cli) -> Result<PathBuf> {
    std::fs::create_dir_all(&cli.out).map_err(crate::error::io_err(&cli.out))?;
    match &cli.command {
        Command::Run(args) => cmd_run(args, &cli.out),
        Command::Stats => per_result_dir(&cli.out, "stats", |m, dir| Ok(vec![output::emit_stats(m, dir)?]), false),
        Command::Compare(a) => per_result_dir(
            &cli.out,
            "compare",
            |m, dir| output::emit_comparison(&compare(m, a.baseline, a.alpha)?, dir),
            false,
        ),
        Command::Convergence => per_result_dir(
            &cli.out,
            "convergence",
            |m, dir| Ok(vec![output::emit_convergence(m, dir)?]),
            true,
        ),
        Command::Report(a) => cmd_report(a, &cli.out),
    }
}

fn run_one(plan: &EvaluationPlan, opts: &ExecOptions, dir: &Path) -> Result<(RunMatrix, Vec<PathBuf>)> {
    std::fs::create_dir_all(dir).map_err(crate::error::io_err(dir))?;
    let total = plan.cell_count();
    log::info!(
        "evaluation {}: {total} trials into {}",
        plan.kind.number(),
        dir.display()
    );
    let matrix = execute(
        plan,
        opts,
        &LogProgress {
            every: (total / 20).max(1),
        },
    )?;
    let mut files = output::emit_runs(&matrix, dir)?;
    files.extend(output::emit_success(
        &success_rates(&matrix, &plan.success_tolerance),
        dir,
    )?);
    files.push(output::emit_costs(&cost_report_of(matrix.entries()), dir)?);
    Ok((matrix, files))
}

fn cmd_run(args: &RunArgs, out: &Path) -> Result<PathBuf> {
    let started = now();
    let (plan, parallel) = args.plan()?;
    if args.profile_memory && !memory_instrumented() {
        log::warn!("built without the allocation counter; peak memory will read 0");
    }
    let opts = ExecOptions {
        parallelism: parallel.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        profile_time: args.profile_time || args.profile_memory,
        profile_memory: args.profile_memory,
    };
    let mut manifest = RunManifest::new("run", Some(&plan), started);
    if plan.kind == EvaluationKind::Eval3 {
        let mut table = SuccessTable::default();
        let mut entries = Vec::new();
        for part in plan.components() {
            let dir = out.join(format!("eval{}", part.kind.number()));
            let (matrix, files) = run_one(&part, &opts, &dir)?;
            manifest.add_outputs(out, &files);
            let mut sub = RunManifest::new("run", Some(&part), manifest.started_at.clone());
            sub.add_outputs(&dir, &files);
            let sub_path = sub.finish(&dir)?;
            manifest.add_outputs(out, [&sub_path]);
            table.extend(success_rates(&matrix, &part.success_tolerance));
            entries.extend(matrix.entries().iter().cloned());
        }
        let mut files = output::emit_success(&table, out)?;
        files.push(output::emit_costs(&cost_report_of(&sorted(entries)), out)?);
        manifest.add_outputs(out, &files);
    } else {
        let (_, files) = run_one(&plan, &opts, out)?;
        manifest.add_outputs(out, &files);
    }
    manifest.finish(out)
}

fn sorted(mut entries: Vec<MatrixEntry>) -> Vec<MatrixEntry> {
    entries.sort_by_key(|e| e.key);
    entries
}

/// Result directories under `root`: `root` itself if it holds a plan,
/// otherwise its `eval1`/`eval2` subdirectories.
pub fn result_dirs(root: &Path) -> Result<Vec<PathBuf>> {
    if root.join(PLAN_FILE).is_file() {
        return Ok(vec![root.to_path_buf()]);
    }
    let dirs: Vec<PathBuf> = ["eval1", "eval2"]
        .iter()
        .map(|d| root.join(d))
        .filter(|d| d.join(PLAN_FILE).is_file())
        .collect();
    if dirs.is_empty() {
        return Err(ArenaError::Invalid(format!(
            "no finished run found in {}",
            root.display()
        )));
    }
    Ok(dirs)
}

fn per_result_dir(
    out: &Path,
    command: &str,
    mut emit: impl FnMut(&RunMatrix, &Path) -> Result<Vec<PathBuf>>,
    with_traces: bool,
) -> Result<PathBuf> {
    let mut manifest = RunManifest::new(command, None, now());
    for dir in result_dirs(out)? {
        let matrix = load_matrix(&dir, with_traces)?;
        if manifest.plan.is_none() {
            manifest.master_seed = Some(matrix.plan().master_seed);
        }
        let files = emit(&matrix, &dir)?;
        manifest.add_outputs(out, &files);
    }
    manifest.finish(out)
}

fn cmd_report(args: &ReportArgs, out: &Path) -> Result<PathBuf> {
    let mut manifest = RunManifest::new("report", None, now());
    let dirs = match &args.inputs {
        Some(d) => d.iter().map(|d| result_dirs(d)).collect::<Result<Vec<_>>>()?.concat(),
        None => result_dirs(out)?,
    };
    let mut table = SuccessTable::default();
    let mut entries = Vec::new();
    for dir in dirs {
        let matrix = load_matrix(&dir, false)?;
        let kind = matrix.plan().kind.number();
        if args.eval.is_some_and(|e| e != 3 && e != kind) {
            continue;
        }
        manifest.master_seed.get_or_insert(matrix.plan().master_seed);
        table.extend(success_rates(&matrix, &matrix.plan().success_tolerance));
        entries.extend(matrix.entries().iter().cloned());
    }
    if entries.is_empty() {
        return Err(ArenaError::Invalid("no results match the requested evaluation".into()));
    }
    let mut files = output::emit_success(&table, out)?;
    files.push(output::emit_costs(&cost_report_of(&sorted(entries)), out)?);
    manifest.add_outputs(out, &files);
    manifest.finish(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("swarm-arena").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn run_flags_echo_into_plan() {
        let cli = parse(&[
            "run", "--eval", "2", "--runs", "30", "--seed", "42", "--out", "results/",
        ]);
        assert_eq!(cli.out, PathBuf::from("results/"));
        let Command::Run(args) = cli.command else { panic!() };
        let (plan, _) = args.plan().unwrap();
        assert_eq!(plan.kind, EvaluationKind::Eval2);
        assert_eq!(plan.runs, 30);
        assert_eq!(plan.master_seed, 42);
        assert_eq!(plan.config.iterations, DESK_ITERATIONS);
    }

    #[test]
    fn full_profile() {
        let Command::Run(args) = parse(&["run", "--full"]).command else {
            panic!()
        };
        let (plan, _) = args.plan().unwrap();
        assert_eq!((plan.runs, plan.config.iterations), (30, 2000));
    }

    #[test]
    fn list_flags() {
        let Command::Run(args) = parse(&["run", "--problems", "P14,p8", "--algorithms", "WOA,pso"]).command else {
            panic!()
        };
        assert_eq!(args.problems, Some(vec![ProblemId::P14, ProblemId::P8]));
        assert_eq!(args.algorithms, Some(vec![AlgorithmId::Woa, AlgorithmId::Pso]));
    }

    #[test]
    fn compare_flags() {
        let cli = parse(&["compare", "--baseline", "woa", "--alpha", "0.05", "--out", "results/"]);
        let Command::Compare(a) = cli.command else { panic!() };
        assert_eq!(a.baseline, AlgorithmId::Woa);
        assert_eq!(a.alpha, 0.05);
    }

    #[test]
    fn usage_errors() {
        for bad in [
            &["run", "--eval", "1", "--runs", "0"][..],
            &["run", "--eval", "4"],
            &["run", "--bogus"],
            &["run", "--problems", "P17"],
            &["run", "--algorithms", "de"],
            &["frobnicate"],
        ] {
            let err = Cli::try_parse_from(std::iter::once("swarm-arena").chain(bad.iter().copied())).unwrap_err();
            assert_ne!(err.exit_code(), 0, "{bad:?}");
        }
    }
}
