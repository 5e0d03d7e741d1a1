//! TOML run configuration.
//!
//! ```toml
//! eval = 2
//! parallel = 4
//! full = false
//!
//! [plan]
//! runs = 10
//! iterations = 500
//! problems = ["P14", "P7"]
//! algorithms = ["woa", "pso"]
//! master_seed = 7
//!
//! [woa]
//! spiral_b = 1.0
//! ```
//!
//! Every key is optional. Algorithm sections accept the parameter names of
//! the core crate's `WoaParams`, `BsaParams`, `FdoParams`, `PsoParams` and
//! `FfParams`; missing parameters keep their defaults. Command-line flags
//! override the file, which overrides the built-in profile.
use std::fs;
use std::path::Path;

use serde::Deserialize;
use swarm_arena_core::optimizers::{BsaParams, FdoParams, FfParams, PsoParams, WoaParams};
use swarm_arena_core::{OptimizerConfig, PlanOverrides};

use crate::error::{io_err, ArenaError, Result};

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub eval: Option<u8>,
    pub parallel: Option<usize>,
    pub full: Option<bool>,
    pub plan: PlanOverrides,
    pub woa: Option<WoaParams>,
    pub bsa: Option<BsaParams>,
    pub fdo: Option<FdoParams>,
    pub pso: Option<PsoParams>,
    pub ff: Option<FfParams>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        toml::from_str(&text).map_err(|source| ArenaError::Toml {
            path: path.into(),
            source,
        })
    }

    /// Replaces the algorithm parameters named in the file.
    pub fn apply_params(&self, config: &mut OptimizerConfig) {
        if let Some(p) = &self.woa {
            config.woa = p.clone();
        }
        if let Some(p) = &self.bsa {
            config.bsa = p.clone();
        }
        if let Some(p) = &self.fdo {
            config.fdo = p.clone();
        }
        if let Some(p) = &self.pso {
            config.pso = p.clone();
        }
        if let Some(p) = &self.ff {
            config.ff = p.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use swarm_arena_core::{AlgorithmId, ProblemId};

    #[test]
    fn parses_partial_sections() {
        let c: ConfigFile = toml::from_str(
            r#"
            eval = 2
            [plan]
            runs = 3
            problems = ["P14", "P7"]
            algorithms = ["woa"]
            [pso]
            inertia = 0.5
            "#,
        )
        .unwrap();
        assert_eq!(c.eval, Some(2));
        assert_eq!(c.plan.runs, Some(3));
        assert_eq!(c.plan.problems, Some(vec![ProblemId::P14, ProblemId::P7]));
        assert_eq!(c.plan.algorithms, Some(vec![AlgorithmId::Woa]));
        let mut cfg = OptimizerConfig::default();
        c.apply_params(&mut cfg);
        assert_eq!(cfg.pso.inertia, 0.5);
        assert_eq!(cfg.pso.social, PsoParams::default().social);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(toml::from_str::<ConfigFile>("bogus = 1").is_err());
        assert!(toml::from_str::<ConfigFile>("[plan]\nrunz = 1").is_err());
    }
}
