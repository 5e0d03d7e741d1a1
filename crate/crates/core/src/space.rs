//! Box-bounded search spaces and the uniform clamping repair.
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rng::Randomness;

/// Per-coordinate closed box `[lower, upper]`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchSpace {
    bounds: Vec<(f64, f64)>,
}

impl SearchSpace {
    pub fn new(bounds: Vec<(f64, f64)>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::InvalidSpace("zero dimensions".into()));
        }
        for (i, &(lo, hi)) in bounds.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidSpace(format!(
                    "coordinate {i}: [{lo}, {hi}] is not a proper interval"
                )));
            }
        }
        Ok(Self { bounds })
    }

    /// The same interval replicated over `dim` coordinates.
    pub fn uniform(lower: f64, upper: f64, dim: usize) -> Result<Self> {
        Self::new(alloc::vec![(lower, upper); dim])
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn width(&self, i: usize) -> f64 {
        let (lo, hi) = self.bounds[i];
        hi - lo
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && x.iter().zip(&self.bounds).all(|(&v, &(lo, hi))| lo <= v && v <= hi)
    }

    /// Clamps `x` into the box. In-bound coordinates are untouched.
    pub fn repair(&self, x: &[f64]) -> Vec<f64> {
        let mut out = x.to_vec();
        self.repair_in_place(&mut out);
        out
    }

    pub fn repair_in_place(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        for (v, &(lo, hi)) in x.iter_mut().zip(&self.bounds) {
            // NaN would survive `clamp`; pin it to the lower bound.
            *v = if v.is_nan() { lo } else { v.clamp(lo, hi) };
        }
    }

    /// A point drawn uniformly from the box.
    pub fn sample<R: Randomness + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.bounds
            .iter()
            .map(|&(lo, hi)| lo + rng.uniform() * (hi - lo))
            .collect()
    }
}

/// Clamps `x` into `space`.
pub fn repair(x: &[f64], space: &SearchSpace) -> Vec<f64> {
    space.repair(x)
}
