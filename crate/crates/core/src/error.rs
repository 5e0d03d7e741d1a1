use alloc::string::String;

use crate::benchfns::{Dimensionality, ProblemId};

/// Errors raised by the core crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{problem} expects {expected} dimension(s), got {got}")]
    DimensionMismatch {
        problem: ProblemId,
        expected: Dimensionality,
        got: usize,
    },
    #[error("coordinate {index} is not finite")]
    NonFiniteInput { index: usize },
    #[error("invalid search space: {0}")]
    InvalidSpace(String),
    #[error("invalid optimizer config: {0}")]
    InvalidConfig(String),
    #[error("invalid plan override: {0}")]
    InvalidOverride(String),
    #[error("input is empty")]
    EmptyInput,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("signed-rank table is defined for 1..=30 observations, got {0}")]
    RankTableOutOfRange(usize),
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
