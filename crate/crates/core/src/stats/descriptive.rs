use libm::sqrt;

use crate::error::{Error, Result};

/// The seven per-cell measures.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DescriptiveStats {
    pub mean: f64,
    /// Sample standard deviation (`n − 1`); zero for a single value.
    pub std: f64,
    pub best: f64,
    pub worst: f64,
    pub avg_time_s: f64,
    pub n_success: usize,
    pub n_fail: usize,
}

/// Summarizes one cell's runs. `best` is the minimum.
pub fn descriptive(values: &[f64], times_s: &[f64], success: &[bool]) -> Result<DescriptiveStats> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    for other in [times_s.len(), success.len()] {
        if other != values.len() {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: other,
            });
        }
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std = if values.len() > 1 {
        sqrt(values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0))
    } else {
        0.0
    };
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let worst = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let n_success = success.iter().filter(|&&s| s).count();
    Ok(DescriptiveStats {
        // Rounding can push the mean of equal values a hair outside [best, worst].
        mean: mean.clamp(best, worst),
        std,
        best,
        worst,
        avg_time_s: times_s.iter().sum::<f64>() / n,
        n_success,
        n_fail: values.len() - n_success,
    })
}
