use std::path::PathBuf;

use swarm_arena_core::plan::CellKey;
use swarm_arena_core::AlgorithmId;

#[derive(Debug, thiserror::Error)]
pub enum ArenaError {
    #[error(transparent)]
    Core(#[from] swarm_arena_core::Error),
    #[error("trial {key:?} failed: {source}")]
    Trial {
        key: CellKey,
        source: swarm_arena_core::Error,
    },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{}: {source}", path.display())]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{}: {source}", path.display())]
    Toml { path: PathBuf, source: toml::de::Error },
    #[error("{}:{line}: {message}", path.display())]
    Format { path: PathBuf, line: u64, message: String },
    #[error("baseline algorithm {0} is not in the results")]
    MissingBaseline(AlgorithmId),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = ArenaError> = std::result::Result<T, E>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> ArenaError {
    let path = path.into();
    move |source| ArenaError::Io { path, source }
}

pub(crate) fn csv_err(path: impl Into<PathBuf>) -> impl FnOnce(csv::Error) -> ArenaError {
    let path = path.into();
    move |source| ArenaError::Csv { path, source }
}
