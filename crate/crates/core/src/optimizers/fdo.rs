//! Fitness Dependent Optimizer.
//!
//! Each scout draws one `r ~ U[-1, 1)` per iteration and computes its fitness
//! weight against the global best `x*`:
//!
//! ```text
//! fw = |f(x*) / f(x)| − wf
//! ```
//!
//! The pace is
//!
//! ```text
//! pace = x·r                   if f(x) = 0, fw = 0, fw = 1 or fw is not finite
//! pace = −(x − x*)·fw          if r < 0
//! pace =  (x − x*)·fw          otherwise
//! ```
//!
//! The scout tries `x + pace` (clamped). An improvement is accepted and the
//! pace remembered. Otherwise, if the scout has a remembered non-zero pace,
//! it tries `x + previous_pace` once more and accepts that on improvement.
//! Failing both, it stays where it is.
//!
//! `r` is uniform here rather than a Lévy-flight draw.
use alloc::vec::Vec;

use libm::fabs;

use super::{check_probability, Objective, Population};
use crate::error::Result;
use crate::rng::Randomness;

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct FdoParams {
    /// Weight factor `wf` subtracted from the fitness ratio.
    pub weight_factor: f64,
}

impl FdoParams {
    pub fn validate(&self) -> Result<()> {
        check_probability("fdo.weight_factor", self.weight_factor)
    }
}

/// Per-iteration bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FdoStep {
    /// Scouts whose first move was accepted.
    pub accepted: usize,
    /// Scouts that re-tried their previous pace (one extra evaluation each).
    pub retries: usize,
    /// Retries that were accepted.
    pub retries_accepted: usize,
}

/// Fitness weight of a scout with fitness `own` against the best fitness.
/// `None` selects the random-walk pace.
pub fn fitness_weight(best: f64, own: f64, weight_factor: f64) -> Option<f64> {
    if own == 0.0 {
        return None;
    }
    let fw = fabs(best / own) - weight_factor;
    (fw.is_finite() && fw != 0.0 && fw != 1.0).then_some(fw)
}

/// One FDO iteration. `paces` holds each scout's last accepted pace.
pub fn update<R: Randomness + ?Sized>(
    pop: &mut Population,
    paces: &mut [Vec<f64>],
    params: &FdoParams,
    objective: &mut Objective<'_>,
    rng: &mut R,
) -> FdoStep {
    debug_assert_eq!(paces.len(), pop.len());
    let mut step = FdoStep::default();
    let dim = pop.dim();
    let mut candidate = alloc::vec![0.0; dim];
    let mut pace = alloc::vec![0.0; dim];

    #[allow(clippy::needless_range_loop)]
    for i in 0..pop.len() {
        let r = rng.uniform_in(-1.0, 1.0);
        let x = &pop.positions[i];
        let best = &pop.best_position;
        match fitness_weight(pop.best_fitness, pop.fitness[i], params.weight_factor) {
            None => {
                for (p, &xj) in pace.iter_mut().zip(x) {
                    *p = xj * r;
                }
            }
            Some(fw) => {
                let sign = if r < 0.0 { -1.0 } else { 1.0 };
                for ((p, &xj), &bj) in pace.iter_mut().zip(x).zip(best) {
                    *p = (xj - bj) * fw * sign;
                }
            }
        }

        for ((c, &xj), &p) in candidate.iter_mut().zip(x).zip(&pace) {
            *c = xj + p;
        }
        let f = objective.repair_and_evaluate(&mut candidate);
        if f < pop.fitness[i] {
            pop.fitness[i] = f;
            pop.positions[i].copy_from_slice(&candidate);
            paces[i].copy_from_slice(&pace);
            step.accepted += 1;
            continue;
        }

        if paces[i].iter().all(|&p| p == 0.0) {
            continue;
        }
        step.retries += 1;
        for ((c, &xj), &p) in candidate.iter_mut().zip(&pop.positions[i]).zip(&paces[i]) {
            *c = xj + p;
        }
        let f = objective.repair_and_evaluate(&mut candidate);
        if f < pop.fitness[i] {
            pop.fitness[i] = f;
            pop.positions[i].copy_from_slice(&candidate);
            step.retries_accepted += 1;
        }
    }
    pop.refresh_leader();
    step
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchfns::ProblemId;
    use crate::rng::{ScriptedRng, TrialRng};
    use crate::space::SearchSpace;
    use alloc::vec;

    #[test]
    fn weight_degenerate_cases() {
        assert_eq!(fitness_weight(1.0, 0.0, 0.0), None);
        assert_eq!(fitness_weight(0.0, 3.0, 0.0), None);
        assert_eq!(fitness_weight(3.0, 3.0, 0.0), None);
        assert_eq!(fitness_weight(1.0, 4.0, 0.0), Some(0.25));
        assert_eq!(fitness_weight(1.0, 4.0, 0.25), None);
        assert_eq!(fitness_weight(-2.0, -8.0, 0.0), Some(0.25));
    }

    #[test]
    fn lone_scout_random_walk_then_retry() {
        // Rastrigin at integers is k², so every value below is exact.
        let space = SearchSpace::uniform(-5.12, 5.12, 1).unwrap();
        let mut obj = Objective::new(ProblemId::P11, &space).unwrap();
        let mut pop = Population::from_evaluated(vec![vec![2.0]], vec![4.0]);
        let mut paces = vec![vec![0.0]];

        // The scout is the best, so fw = 1: pace = 2·r with r = 2·0.25 − 1 = −0.5.
        let mut rng = ScriptedRng::uniforms([0.25]);
        let s = update(&mut pop, &mut paces, &FdoParams::default(), &mut obj, &mut rng);
        assert_eq!(pop.positions, vec![vec![1.0]]);
        assert_eq!(paces, vec![vec![-1.0]]);
        assert_eq!(
            s,
            FdoStep {
                accepted: 1,
                retries: 0,
                retries_accepted: 0
            }
        );

        // r = 0.5: pace 0.5 lands on 1.5 (f = 22.25), rejected; the stored pace
        // −1 is retried and reaches 0.
        let mut rng = ScriptedRng::uniforms([0.75]);
        let s = update(&mut pop, &mut paces, &FdoParams::default(), &mut obj, &mut rng);
        assert_eq!(pop.positions, vec![vec![0.0]]);
        assert_eq!(pop.best_fitness, 0.0);
        assert_eq!(paces, vec![vec![-1.0]]);
        assert_eq!(
            s,
            FdoStep {
                accepted: 0,
                retries: 1,
                retries_accepted: 1
            }
        );
        assert_eq!(obj.evaluations(), 3);
    }

    #[test]
    fn weighted_pace_toward_best() {
        // Griewank in one coordinate grows with |x| on (−π, π).
        let space = SearchSpace::uniform(-600.0, 600.0, 1).unwrap();
        let mut obj = Objective::new(ProblemId::P9, &space).unwrap();
        let g = |x: f64| 1.0 + x * x / 4000.0 - libm::cos(x);
        let mut pop = Population::from_evaluated(vec![vec![0.5], vec![2.0]], vec![g(0.5), g(2.0)]);
        let mut paces = vec![vec![0.0], vec![0.0]];
        // Scout 0 is the best (fw = 1): r = 0 gives a zero pace, rejected, and
        // there is no stored pace to retry.
        // Scout 1: fw = g(0.5)/g(2), r = −0.5 < 0, pace = −(2 − 0.5)·fw.
        let mut rng = ScriptedRng::uniforms([0.5, 0.25]);
        let s = update(&mut pop, &mut paces, &FdoParams::default(), &mut obj, &mut rng);
        let fw = g(0.5) / g(2.0);
        let pace = -(2.0 - 0.5) * fw;
        assert_eq!(pop.positions, vec![vec![0.5], vec![2.0 + pace]]);
        assert_eq!(paces, vec![vec![0.0], vec![pace]]);
        assert_eq!(pop.fitness[1], g(2.0 + pace));
        assert_eq!(
            s,
            FdoStep {
                accepted: 1,
                retries: 0,
                retries_accepted: 0
            }
        );
    }

    #[test]
    fn acceptance_never_worsens_and_counts_evaluations() {
        let space = SearchSpace::uniform(-5.0, 5.0, 4).unwrap();
        let mut obj = Objective::new(ProblemId::P15, &space).unwrap();
        let mut rng = TrialRng::new(77);
        let mut pop = Population::initialize(&mut obj, 12, &mut rng);
        let mut paces = vec![vec![0.0; 4]; 12];
        let mut retries = 0;
        for _ in 0..60 {
            let before = pop.fitness.clone();
            retries += update(&mut pop, &mut paces, &FdoParams::default(), &mut obj, &mut rng).retries;
            assert!(pop.fitness.iter().zip(&before).all(|(a, b)| a <= b));
        }
        assert_eq!(obj.evaluations() as usize, 12 * 61 + retries);
    }
}
