//! Particle Swarm Optimization (global-best topology, synchronous update).
//!
//! For every particle and coordinate, drawing `r1` then `r2`:
//!
//! ```text
//! v ← w·v + c1·r1·(pbest − x) + c2·r2·(gbest − x),  clamped to ±vmax
//! x ← clamp(x + v)
//! ```
//!
//! `vmax = velocity_clamp · (upper − lower)` per coordinate. Initial
//! velocities are uniform in `[−vmax, vmax)`. `gbest` is the leader at the
//! start of the iteration.
use alloc::vec::Vec;

use super::{check_non_negative, invalid, Objective, Population};
use crate::error::Result;
use crate::rng::Randomness;
use crate::space::SearchSpace;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct PsoParams {
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Velocity limit as a fraction of each coordinate's range.
    pub velocity_clamp: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
            velocity_clamp: 1.0,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        if !self.inertia.is_finite() {
            return invalid("pso.inertia must be finite");
        }
        check_non_negative("pso.cognitive", self.cognitive)?;
        check_non_negative("pso.social", self.social)?;
        if !(self.velocity_clamp.is_finite() && self.velocity_clamp > 0.0) {
            return invalid("pso.velocity_clamp must be positive");
        }
        Ok(())
    }
}

/// Velocities and personal bests.
#[derive(Debug, Clone, PartialEq)]
pub struct Swarm {
    pub velocities: Vec<Vec<f64>>,
    pub best_positions: Vec<Vec<f64>>,
    pub best_fitness: Vec<f64>,
    vmax: Vec<f64>,
}

impl Swarm {
    /// Personal bests start at the initial positions.
    pub fn new<R: Randomness + ?Sized>(pop: &Population, space: &SearchSpace, params: &PsoParams, rng: &mut R) -> Self {
        let vmax: Vec<f64> = (0..space.dim())
            .map(|j| params.velocity_clamp * space.width(j))
            .collect();
        let velocities = (0..pop.len())
            .map(|_| vmax.iter().map(|&m| rng.uniform_in(-m, m)).collect())
            .collect();
        Self::with_velocities(pop, space, params, velocities)
    }

    pub fn with_velocities(
        pop: &Population,
        space: &SearchSpace,
        params: &PsoParams,
        velocities: Vec<Vec<f64>>,
    ) -> Self {
        Self {
            velocities,
            best_positions: pop.positions.clone(),
            best_fitness: pop.fitness.clone(),
            vmax: (0..space.dim())
                .map(|j| params.velocity_clamp * space.width(j))
                .collect(),
        }
    }
}

/// One PSO iteration.
pub fn update<R: Randomness + ?Sized>(
    pop: &mut Population,
    swarm: &mut Swarm,
    params: &PsoParams,
    objective: &mut Objective<'_>,
    rng: &mut R,
) {
    let gbest = pop.best_position.clone();
    for i in 0..pop.len() {
        let x = &mut pop.positions[i];
        let v = &mut swarm.velocities[i];
        let pbest = &swarm.best_positions[i];
        for j in 0..x.len() {
            let r1 = rng.uniform();
            let r2 = rng.uniform();
            let vel = params.inertia * v[j]
                + params.cognitive * r1 * (pbest[j] - x[j])
                + params.social * r2 * (gbest[j] - x[j]);
            v[j] = vel.clamp(-swarm.vmax[j], swarm.vmax[j]);
            x[j] += v[j];
        }
        let f = objective.repair_and_evaluate(x);
        pop.fitness[i] = f;
        if f < swarm.best_fitness[i] {
            swarm.best_fitness[i] = f;
            swarm.best_positions[i].clone_from(x);
        }
    }
    pop.refresh_leader();
}
