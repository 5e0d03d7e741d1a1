mod common;

use std::fs;
use std::process::Command;

use swarm_arena::compare::compare;
use swarm_arena::harness::{execute, success_rates, ExecOptions, Silent};
use swarm_arena::manifest::RunManifest;
use swarm_arena::output::{
    emit_comparison, emit_runs, emit_success, load_matrix, read_csv, read_json, RunRow, SuccessCsvRow, TraceRow,
    WilcoxonCsvRow,
};
use swarm_arena::ArenaError;
use swarm_arena_core::plan::Region;
use swarm_arena_core::{plan_evaluation, AlgorithmId, EvaluationKind, PlanOverrides, ProblemId};

fn smoke() -> swarm_arena::RunMatrix {
    let plan = plan_evaluation(
        EvaluationKind::Eval2,
        &PlanOverrides {
            problems: Some(vec![ProblemId::P3]),
            algorithms: Some(vec![AlgorithmId::Bsa, AlgorithmId::Ff]),
            regions: Some(vec![Region::R2]),
            runs: Some(2),
            iterations: Some(50),
            ..Default::default()
        },
    )
    .unwrap();
    execute(&plan, &ExecOptions::default(), &Silent).unwrap()
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_swarm-arena"));
    c.env("RUST_LOG", "warn").env_remove("SWARM_ARENA_OUT");
    c
}

#[test]
fn runs_csv_round_trips() {
    let m = smoke();
    let dir = tempfile::tempdir().unwrap();
    emit_runs(&m, dir.path()).unwrap();
    let text = fs::read_to_string(dir.path().join("runs.csv")).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert_eq!(
        text.lines().next().unwrap(),
        "problem,algorithm,variant,run,seed,best_fitness,evaluations,wall_time_s,peak_memory_bytes,success"
    );
    let rows: Vec<RunRow> = read_csv(&dir.path().join("runs.csv")).unwrap();
    let expected: Vec<RunRow> = m.entries().iter().map(|e| RunRow::new(&m, e)).collect();
    assert_eq!(rows, expected);

    let back = load_matrix(dir.path(), true).unwrap();
    for (a, b) in m.entries().iter().zip(back.entries()) {
        assert_eq!(a.key, b.key);
        assert_eq!(a.record.best_fitness, b.record.best_fitness);
        assert_eq!(a.record.trace, b.record.trace);
        assert_eq!(a.record.seed, b.record.seed);
    }
}

#[test]
fn trace_files_have_one_line_per_iteration() {
    let m = smoke();
    let dir = tempfile::tempdir().unwrap();
    emit_runs(&m, dir.path()).unwrap();
    let path = dir.path().join("traces").join("trace_P3_ff_R2_1.csv");
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 51);
    assert_eq!(text.lines().next(), Some("iteration,best_so_far"));
    let rows: Vec<TraceRow> = read_csv(&path).unwrap();
    assert_eq!(rows[0].iteration, 1);
    assert_eq!(rows[49].best_so_far, m.entries()[3].record.best_fitness);
}

#[test]
fn baseline_against_itself_is_all_ties() {
    let plan = common::plan(
        &[ProblemId::P1, ProblemId::P2],
        &[AlgorithmId::Woa, AlgorithmId::Pso],
        6,
    );
    let same = common::synthetic(plan, |k| (k.run as f64, 0.0, 0));
    let c = compare(&same, AlgorithmId::Woa, 0.05).unwrap();
    assert!(c.rows.iter().all(|r| r.result.verdict.symbol() == '='));
    for s in &c.summary {
        assert_eq!(s.tally.total(), 2);
    }
    let dir = tempfile::tempdir().unwrap();
    emit_comparison(&c, dir.path()).unwrap();
    let rows: Vec<WilcoxonCsvRow> = read_csv(&dir.path().join("wilcoxon.csv")).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].verdict, '=');
}

#[test]
fn missing_baseline_is_an_error() {
    let m = smoke();
    assert!(matches!(
        compare(&m, AlgorithmId::Woa, 0.05),
        Err(ArenaError::MissingBaseline(AlgorithmId::Woa))
    ));
}

#[test]
fn success_fractions_are_fractions() {
    let m = smoke();
    let dir = tempfile::tempdir().unwrap();
    emit_success(&success_rates(&m, &m.plan().success_tolerance), dir.path()).unwrap();
    let rows: Vec<SuccessCsvRow> = read_csv(&dir.path().join("success.csv")).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| (0.0..=1.0).contains(&r.success_fraction)));
}

#[test]
fn cli_full_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("res");
    let ok = bin()
        .args([
            "run",
            "--eval",
            "3",
            "--problems",
            "P14,P9",
            "--algorithms",
            "woa,fdo",
            "--runs",
            "2",
            "--iters",
            "20",
        ])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(ok.success());
    let manifest: RunManifest = read_json(&out.join("manifest.json")).unwrap();
    assert_eq!(manifest.master_seed, Some(0));
    for f in &manifest.outputs {
        assert!(out.join(f).is_file(), "{f}");
    }
    assert!(manifest.outputs.iter().any(|f| f == "eval1/runs.csv"));
    assert!(manifest.outputs.iter().any(|f| f == "success.csv"));
    // P9 at 10/30/60 plus P14 at 2 in Eval1, both problems in three regions in Eval2.
    let success = fs::read_to_string(out.join("success.csv")).unwrap();
    assert_eq!(success.lines().count(), 1 + (4 + 6) * 2);

    for cmd in [
        &["stats"][..],
        &["compare", "--baseline", "fdo"],
        &["convergence"],
        &["report"],
    ] {
        let ok = bin().args(cmd).arg("--out").arg(&out).status().unwrap();
        assert!(ok.success(), "{cmd:?}");
    }
    for f in ["stats.csv", "wilcoxon.csv", "summary.csv", "convergence.csv"] {
        assert!(out.join("eval1").join(f).is_file(), "{f}");
        assert!(out.join("eval2").join(f).is_file(), "{f}");
    }
    let conv = fs::read_to_string(out.join("eval2/convergence.csv")).unwrap();
    assert_eq!(conv.lines().count(), 1 + 2 * 2 * 3 * 20);
    assert!(out.join("manifest-report.json").is_file());
}

#[test]
fn cli_usage_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["run", "--eval", "1", "--runs", "0"][..],
        &["run", "--tol-abs", "-1"],
        &["run", "--pop", "1"],
        &["run", "--unknown"],
        &["compare", "--baseline", "gwo"],
    ] {
        let out = bin().args(args).arg("--out").arg(dir.path()).output().unwrap();
        assert!(!out.status.success(), "{args:?}");
        assert!(!dir.path().join("manifest.json").exists());
    }
    let out = bin().args(["compare"]).arg("--out").arg(dir.path()).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("arena.toml");
    fs::write(
        &cfg,
        "eval = 2\n[plan]\nruns = 4\niterations = 10\nproblems = [\"P8\"]\nalgorithms = [\"pso\"]\nregions = [\"R1\"]\n[pso]\ninertia = 0.5\n",
    )
    .unwrap();
    let out = dir.path().join("o");
    let ok = bin()
        .args(["run", "--runs", "2", "--profile-time", "--config"])
        .arg(&cfg)
        .env("SWARM_ARENA_OUT", &out)
        .status()
        .unwrap();
    assert!(ok.success());
    let rows: Vec<RunRow> = read_csv(&out.join("runs.csv")).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.wall_time_s > 0.0 && r.peak_memory_bytes == 0));
    let plan: swarm_arena_core::EvaluationPlan = read_json(&out.join("plan.json")).unwrap();
    assert_eq!(plan.config.pso.inertia, 0.5);
    assert_eq!(plan.config.iterations, 10);
}

#[test]
fn memory_profiling_fills_cost_columns() {
    let dir = tempfile::tempdir().unwrap();
    let ok = bin()
        .args([
            "run",
            "--eval",
            "2",
            "--problems",
            "P14",
            "--algorithms",
            "woa,bsa",
            "--runs",
            "1",
            "--iters",
            "10",
        ])
        .args(["--profile-memory", "--parallel", "4", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(ok.success());
    let rows: Vec<RunRow> = read_csv(&dir.path().join("runs.csv")).unwrap();
    assert!(rows.iter().all(|r| r.wall_time_s > 0.0 && r.peak_memory_bytes > 0));
    let costs = fs::read_to_string(dir.path().join("costs.csv")).unwrap();
    assert_eq!(costs.lines().count(), 3);
}
