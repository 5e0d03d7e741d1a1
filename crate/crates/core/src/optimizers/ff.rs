//! Firefly Algorithm.
//!
//! Brightness is the fitness at the start of the iteration (lower is
//! brighter). Firefly `i` visits every strictly brighter `j` in index order
//! and for each one moves, per coordinate with a fresh `u ~ U[0, 1)`:
//!
//! ```text
//! β  = β0·exp(−γ·r²),  r = ‖x_i − x_j‖
//! x_i ← x_i + β·(x_j − x_i) + α·(u − 0.5)·(upper − lower)
//! ```
//!
//! `x_j` is the position at the start of the iteration. A firefly with no
//! brighter neighbour takes only the random step. `α` at iteration `t` is
//! `alpha · alpha_decay^t`.
use alloc::vec::Vec;

use libm::{exp, pow};

use super::{check_non_negative, check_probability, Objective, Population};
use crate::error::Result;
use crate::rng::Randomness;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct FfParams {
    pub alpha: f64,
    pub beta0: f64,
    pub gamma: f64,
    pub alpha_decay: f64,
}

impl Default for FfParams {
    fn default() -> Self {
        Self {
            alpha: 0.25,
            beta0: 1.0,
            gamma: 1.0,
            alpha_decay: 0.97,
        }
    }
}

impl FfParams {
    pub fn validate(&self) -> Result<()> {
        check_non_negative("ff.alpha", self.alpha)?;
        check_non_negative("ff.beta0", self.beta0)?;
        check_non_negative("ff.gamma", self.gamma)?;
        check_probability("ff.alpha_decay", self.alpha_decay)
    }

    /// Randomization strength at iteration `t`.
    pub fn alpha_at(&self, t: usize) -> f64 {
        self.alpha * pow(self.alpha_decay, t as f64)
    }
}

/// One FF iteration with randomization strength `alpha`.
pub fn update<R: Randomness + ?Sized>(
    pop: &mut Population,
    alpha: f64,
    params: &FfParams,
    objective: &mut Objective<'_>,
    rng: &mut R,
) {
    let space = objective.space();
    let widths: Vec<f64> = (0..pop.dim()).map(|j| space.width(j)).collect();
    let snapshot = pop.positions.clone();
    let brightness = pop.fitness.clone();

    for (i, x) in pop.positions.iter_mut().enumerate() {
        let mut moved = false;
        for (j, xj) in snapshot.iter().enumerate() {
            if brightness[j] >= brightness[i] {
                continue;
            }
            moved = true;
            let r2: f64 = x.iter().zip(xj).map(|(a, b)| (a - b) * (a - b)).sum();
            let beta = params.beta0 * exp(-params.gamma * r2);
            for ((xi, &target), &w) in x.iter_mut().zip(xj).zip(&widths) {
                *xi += beta * (target - *xi) + alpha * (rng.uniform() - 0.5) * w;
            }
        }
        if !moved {
            for (xi, &w) in x.iter_mut().zip(&widths) {
                *xi += alpha * (rng.uniform() - 0.5) * w;
            }
        }
    }

    for (x, f) in pop.positions.iter_mut().zip(pop.fitness.iter_mut()) {
        *f = objective.repair_and_evaluate(x);
    }
    pop.refresh_leader();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchfns::ProblemId;
    use crate::rng::{ScriptedRng, TrialRng};
    use crate::space::SearchSpace;
    use alloc::vec;

    fn pop_1d(xs: &[f64]) -> Population {
        let fit = xs.iter().map(|x| x * x).collect();
        Population::from_evaluated(xs.iter().map(|&x| vec![x]).collect(), fit)
    }

    fn space_1d() -> SearchSpace {
        SearchSpace::uniform(-5.12, 5.12, 1).unwrap()
    }

    #[test]
    fn brightest_without_noise_stays() {
        let space = space_1d();
        let mut obj = Objective::new(ProblemId::P11, &space).unwrap();
        let mut pop = pop_1d(&[0.0, 2.0, -3.0]);
        let mut rng = TrialRng::new(1);
        update(&mut pop, 0.0, &FfParams::default(), &mut obj, &mut rng);
        assert_eq!(pop.positions[0], vec![0.0]);
    }

    #[test]
    fn full_attraction_moves_onto_brighter() {
        let space = SearchSpace::uniform(-5.12, 5.12, 2).unwrap();
        let mut obj = Objective::new(ProblemId::P11, &space).unwrap();
        let mut pop = Population::from_evaluated(vec![vec![3.0, -2.0], vec![1.0, 1.0]], vec![13.0, 2.0]);
        let params = FfParams {
            alpha: 0.0,
            beta0: 1.0,
            gamma: 0.0,
            alpha_decay: 1.0,
        };
        let mut rng = TrialRng::new(1);
        update(&mut pop, 0.0, &params, &mut obj, &mut rng);
        assert_eq!(pop.positions, vec![vec![1.0, 1.0], vec![1.0, 1.0]]);
    }

    #[test]
    fn three_fireflies_match_hand_calculation() {
        let space = space_1d();
        let mut obj = Objective::new(ProblemId::P11, &space).unwrap();
        // Fitness 9, 1, 0: firefly 2 is brightest, 1 sees 2, 0 sees 1 then 2.
        let mut pop = pop_1d(&[3.0, 1.0, 0.0]);
        let params = FfParams::default();
        let alpha = 0.2;
        let w = 10.24;
        let mut rng = ScriptedRng::uniforms([0.7, 0.4, 0.5, 0.9]);
        update(&mut pop, alpha, &params, &mut obj, &mut rng);

        let x0 = 3.0 + (exp(-4.0) * (1.0 - 3.0) + alpha * (0.7 - 0.5) * w);
        let x0 = x0 + (exp(-(x0 * x0)) * (0.0 - x0) + alpha * (0.4 - 0.5) * w);
        let x1 = 1.0 + (exp(-1.0) * (0.0 - 1.0) + alpha * (0.5 - 0.5) * w);
        let x2 = 0.0 + alpha * (0.9 - 0.5) * w;
        assert_eq!(pop.positions, vec![vec![x0], vec![x1], vec![x2]]);
        assert_eq!(rng.remaining(), (0, 0));
    }

    #[test]
    fn alpha_schedule() {
        let p = FfParams::default();
        assert_eq!(p.alpha_at(0), 0.25);
        assert!((p.alpha_at(2) - 0.25 * 0.97 * 0.97).abs() < 1e-15);
    }
}
