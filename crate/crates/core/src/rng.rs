//! Random sources.
//!
//! Trials draw from [`TrialRng`], a xoshiro256++ generator whose state is
//! expanded from a 64-bit seed with SplitMix64. Both algorithms are published
//! and platform independent, so a seed reproduces a run on any host.
//!
//! Optimizer steps are generic over [`Randomness`] so tests can substitute
//! [`ScriptedRng`] and pin every draw.
use alloc::collections::VecDeque;
use alloc::vec::Vec;

use rand::Rng;
use rand_core::SeedableRng;
use rand_distr::StandardNormal;
use rand_xoshiro::Xoshiro256PlusPlus;

/// The draws an optimizer step needs.
pub trait Randomness {
    /// Uniform in `[0, 1)`.
    fn uniform(&mut self) -> f64;
    /// Standard normal.
    fn normal(&mut self) -> f64;
    /// Uniform index in `0..n`. `n` must be positive.
    fn below(&mut self, n: usize) -> usize;

    /// Uniform in `[lo, hi)`.
    fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.uniform() * (hi - lo)
    }

    /// In-place Fisher-Yates shuffle.
    fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

/// Seeded per-trial generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRng(Xoshiro256PlusPlus);

impl TrialRng {
    pub fn new(seed: u64) -> Self {
        Self(Xoshiro256PlusPlus::seed_from_u64(seed))
    }
}

impl Randomness for TrialRng {
    fn uniform(&mut self) -> f64 {
        self.0.gen::<f64>()
    }

    fn normal(&mut self) -> f64 {
        self.0.sample(StandardNormal)
    }

    fn below(&mut self, n: usize) -> usize {
        self.0.gen_range(0..n)
    }
}

/// Replays fixed draws. `below(n)` consumes a uniform `u` and returns
/// `floor(u·n)`. Panics when a queue runs dry.
#[derive(Debug, Clone, Default)]
pub struct ScriptedRng {
    uniforms: VecDeque<f64>,
    normals: VecDeque<f64>,
}

impl ScriptedRng {
    pub fn new(uniforms: impl Into<Vec<f64>>, normals: impl Into<Vec<f64>>) -> Self {
        Self {
            uniforms: uniforms.into().into(),
            normals: normals.into().into(),
        }
    }

    pub fn uniforms(uniforms: impl Into<Vec<f64>>) -> Self {
        Self::new(uniforms, Vec::new())
    }

    /// Draws not yet consumed, `(uniforms, normals)`.
    pub fn remaining(&self) -> (usize, usize) {
        (self.uniforms.len(), self.normals.len())
    }
}

impl Randomness for ScriptedRng {
    fn uniform(&mut self) -> f64 {
        self.uniforms.pop_front().expect("scripted uniforms exhausted")
    }

    fn normal(&mut self) -> f64 {
        self.normals.pop_front().expect("scripted normals exhausted")
    }

    fn below(&mut self, n: usize) -> usize {
        let u = self.uniform();
        ((u * n as f64) as usize).min(n - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_rng_is_reproducible() {
        let mut a = TrialRng::new(99);
        let mut b = TrialRng::new(99);
        for _ in 0..100 {
            assert_eq!(a.uniform().to_bits(), b.uniform().to_bits());
            assert_eq!(a.normal().to_bits(), b.normal().to_bits());
            assert_eq!(a.below(7), b.below(7));
        }
        assert_ne!(TrialRng::new(1), TrialRng::new(2));
    }

    #[test]
    fn uniform_range() {
        let mut r = TrialRng::new(3);
        for _ in 0..10_000 {
            let u = r.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn scripted_below() {
        let mut r = ScriptedRng::uniforms([0.0, 0.5, 0.999]);
        assert_eq!(r.below(4), 0);
        assert_eq!(r.below(4), 2);
        assert_eq!(r.below(4), 3);
        assert_eq!(r.remaining(), (0, 0));
    }
}
