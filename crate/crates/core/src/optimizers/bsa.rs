//! Backtracking Search Optimization Algorithm.
//!
//! Per generation, drawing in this order:
//!
//! 1. Selection I: draw `u_a, u_b`; if `u_a < u_b` the historical population
//!    becomes a copy of the current one. The historical rows are then shuffled.
//! 2. Mutation: `F = mutation_scale · N(0, 1)`, one draw per generation;
//!    `mutant = P + F·(historical − P)`.
//! 3. Crossover: draw `u_c, u_d`. If `u_c < u_d`, each individual mutates the
//!    first `ceil(mixrate · u · dim)` coordinates of a fresh shuffle of its
//!    coordinates; otherwise it mutates one uniformly chosen coordinate. All
//!    other coordinates keep their current values.
//! 4. Trials are clamped and evaluated; Selection II keeps a trial only when it
//!    is strictly better than the individual it would replace.
use alloc::vec::Vec;

use libm::ceil;

use super::{check_non_negative, check_probability, Objective, Population};
use crate::error::Result;
use crate::rng::Randomness;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct BsaParams {
    pub mixrate: f64,
    /// Multiplier of the standard-normal amplitude draw `F`.
    pub mutation_scale: f64,
}

impl Default for BsaParams {
    fn default() -> Self {
        Self {
            mixrate: 1.0,
            mutation_scale: 3.0,
        }
    }
}

impl BsaParams {
    pub fn validate(&self) -> Result<()> {
        check_probability("bsa.mixrate", self.mixrate)?;
        check_non_negative("bsa.mutation_scale", self.mutation_scale)
    }
}

/// One BSA generation. `historical` must have the population's shape.
pub fn update<R: Randomness + ?Sized>(
    pop: &mut Population,
    historical: &mut Vec<Vec<f64>>,
    params: &BsaParams,
    objective: &mut Objective<'_>,
    rng: &mut R,
) {
    debug_assert_eq!(historical.len(), pop.len());
    let n = pop.len();
    let dim = pop.dim();

    let (ua, ub) = (rng.uniform(), rng.uniform());
    if ua < ub {
        historical.clone_from(&pop.positions);
    }
    rng.shuffle(historical);

    let amplitude = params.mutation_scale * rng.normal();

    let (uc, ud) = (rng.uniform(), rng.uniform());
    let mut mask = alloc::vec![alloc::vec![false; dim]; n];
    if uc < ud {
        let mut order: Vec<usize> = (0..dim).collect();
        for row in mask.iter_mut() {
            order.iter_mut().enumerate().for_each(|(k, j)| *j = k);
            rng.shuffle(&mut order);
            let count = ceil(params.mixrate * rng.uniform() * dim as f64) as usize;
            for &j in order.iter().take(count.min(dim)) {
                row[j] = true;
            }
        }
    } else {
        for row in mask.iter_mut() {
            row[rng.below(dim)] = true;
        }
    }

    for i in 0..n {
        let mut trial = pop.positions[i].clone();
        for j in 0..dim {
            if mask[i][j] {
                let x = pop.positions[i][j];
                trial[j] = x + amplitude * (historical[i][j] - x);
            }
        }
        let f = objective.repair_and_evaluate(&mut trial);
        if f < pop.fitness[i] {
            pop.fitness[i] = f;
            pop.positions[i] = trial;
        }
    }
    pop.refresh_leader();
}
