//! The JSON manifest that closes every command.
//!
//! Keys: `tool`, `version`, `command`, `master_seed`, `plan`, `started_at`,
//! `finished_at` (RFC 3339, UTC) and `outputs` (paths relative to the output
//! directory). It is written after every other file, so its presence marks a
//! complete run. Timestamps appear nowhere else.
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use swarm_arena_core::EvaluationPlan;

use crate::error::Result;
use crate::output::write_json;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub master_seed: Option<u64>,
    pub plan: Option<EvaluationPlan>,
    pub started_at: String,
    pub finished_at: String,
    pub outputs: Vec<String>,
}

pub fn now() -> String {
    chrono::Utc::now().to_rfc3339()
}

/// File name of the manifest written by `command`.
pub fn manifest_name(command: &str) -> String {
    if command == "run" {
        "manifest.json".into()
    } else {
        format!("manifest-{command}.json")
    }
}

impl RunManifest {
    pub fn new(command: &str, plan: Option<&EvaluationPlan>, started_at: String) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            master_seed: plan.map(|p| p.master_seed),
            plan: plan.cloned(),
            started_at,
            finished_at: String::new(),
            outputs: Vec::new(),
        }
    }

    /// Records `paths` relative to `root` where possible.
    pub fn add_outputs<'a>(&mut self, root: &Path, paths: impl IntoIterator<Item = &'a PathBuf>) {
        for p in paths {
            let rel = p.strip_prefix(root).unwrap_or(p);
            self.outputs.push(rel.to_string_lossy().replace('\\', "/"));
        }
    }

    /// Stamps the finish time and writes the manifest into `dir`.
    pub fn finish(mut self, dir: &Path) -> Result<PathBuf> {
        self.finished_at = now();
        write_json(&dir.join(manifest_name(&self.command)), &self)
    }
}
