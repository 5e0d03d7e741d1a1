//! Whale Optimization Algorithm.
//!
//! Each whale draws `p`. With probability `branch_prob` it encircles: it
//! draws `r1, r2`, sets `A = 2a·r1 − a` and `C = 2·r2`, then moves toward the
//! leader when `|A| < 1` or toward a uniformly chosen whale otherwise:
//!
//! ```text
//! x' = target − A·|C·target − x|
//! ```
//!
//! Otherwise it follows the logarithmic spiral around the leader with
//! `l ~ U[-1, 1)`:
//!
//! ```text
//! x' = |leader − x|·e^(b·l)·cos(2πl) + leader
//! ```
//!
//! `a` falls linearly from 2 at the first iteration to 0 at the last. Whales
//! move in index order, so the exploring branch may target a whale that has
//! already moved this iteration.
use core::f64::consts::PI;

use libm::{cos, exp, fabs};

use super::{check_non_negative, check_probability, Objective, Population};
use crate::error::Result;
use crate::rng::Randomness;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct WoaParams {
    /// Spiral shape constant `b`.
    pub spiral_b: f64,
    /// Probability of the encircle/explore branch over the spiral.
    pub branch_prob: f64,
}

impl Default for WoaParams {
    fn default() -> Self {
        Self {
            spiral_b: 1.0,
            branch_prob: 0.5,
        }
    }
}

impl WoaParams {
    pub fn validate(&self) -> Result<()> {
        check_probability("woa.branch_prob", self.branch_prob)?;
        check_non_negative("woa.spiral_b", self.spiral_b)
    }
}

/// Control scalar `a` at `iteration` out of `total_iterations`.
pub fn control(iteration: usize, total_iterations: usize) -> f64 {
    if total_iterations <= 1 {
        return 2.0;
    }
    2.0 * (1.0 - iteration as f64 / (total_iterations - 1) as f64)
}

/// One WOA iteration: move every whale, clamp, re-evaluate, update the leader.
pub fn update<R: Randomness + ?Sized>(
    pop: &mut Population,
    iteration: usize,
    total_iterations: usize,
    params: &WoaParams,
    objective: &mut Objective<'_>,
    rng: &mut R,
) {
    debug_assert!(iteration < total_iterations);
    let a = control(iteration, total_iterations);
    let n = pop.len();
    let leader = pop.best_position.clone();

    for i in 0..n {
        let p = rng.uniform();
        if p < params.branch_prob {
            let r1 = rng.uniform();
            let r2 = rng.uniform();
            let big_a = 2.0 * a * r1 - a;
            let big_c = 2.0 * r2;
            let target = if fabs(big_a) < 1.0 {
                leader.clone()
            } else {
                pop.positions[rng.below(n)].clone()
            };
            for (x, t) in pop.positions[i].iter_mut().zip(&target) {
                *x = t - big_a * fabs(big_c * t - *x);
            }
        } else {
            let l = rng.uniform_in(-1.0, 1.0);
            let factor = exp(params.spiral_b * l) * cos(2.0 * PI * l);
            for (x, &best) in pop.positions[i].iter_mut().zip(&leader) {
                *x = fabs(best - *x) * factor + best;
            }
        }
    }

    for (x, f) in pop.positions.iter_mut().zip(pop.fitness.iter_mut()) {
        *f = objective.repair_and_evaluate(x);
    }
    pop.refresh_leader();
}
