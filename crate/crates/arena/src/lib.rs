//! Batch execution, profiling and reporting on top of `swarm-arena-core`.
//!
//! [`harness`] turns an evaluation plan into a sorted, seed-deterministic
//! [`harness::RunMatrix`]; [`profiling`] measures trial cost; [`compare`] and
//! [`output`] produce the CSV tables; [`cli`] drives it all from the
//! `swarm-arena` binary.
pub mod cli;
pub mod compare;
pub mod config;
pub mod error;
pub mod harness;
pub mod manifest;
pub mod output;
pub mod profiling;

pub use error::{ArenaError, Result};
pub use harness::{execute, success_rates, ExecOptions, MatrixEntry, ProgressSink, RunMatrix, SuccessTable};
pub use profiling::{cost_report, measure, peak_memory, timed, CostReport, CostSample};
