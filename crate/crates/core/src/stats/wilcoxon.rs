//! Exact two-sided Wilcoxon signed-rank test for paired samples.
//!
//! Differences `a − b` equal to zero are dropped. The remaining absolute
//! differences are ranked with average ranks for ties and `T+` is the rank
//! sum of the positive differences. The null distribution of `T+` is built
//! by dynamic programming over the realized ranks (halves included), so the
//! p-value is exact with or without ties:
//!
//! ```text
//! p = min(1, 2·min(P(T ≤ T+), P(T ≥ T+)))
//! ```
//!
//! Probabilities are dyadic rationals `k / 2ⁿ`, which `f64` represents
//! exactly up to `n = 53`.
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use libm::fabs;

use crate::error::{Error, Result};

/// Outcome of a pairwise comparison under minimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Verdict {
    /// The first sample is significantly smaller (better).
    Plus,
    /// No significant difference.
    Equal,
    /// The first sample is significantly larger (worse).
    Minus,
}

impl Verdict {
    pub const fn symbol(self) -> char {
        match self {
            Verdict::Plus => '+',
            Verdict::Equal => '=',
            Verdict::Minus => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '+' => Some(Verdict::Plus),
            '=' => Some(Verdict::Equal),
            '-' | '−' => Some(Verdict::Minus),
            _ => None,
        }
    }

    /// The verdict seen from the other side of the pairing.
    pub const fn flipped(self) -> Self {
        match self {
            Verdict::Plus => Verdict::Minus,
            Verdict::Equal => Verdict::Equal,
            Verdict::Minus => Verdict::Plus,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WilcoxonResult {
    pub t_plus: f64,
    pub t_minus: f64,
    /// Pairs with a non-zero difference.
    pub n_effective: usize,
    pub p_value: f64,
    pub alpha: f64,
    pub verdict: Verdict,
}

/// Paired two-sided test of `a` against `b` at level `alpha`.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64], alpha: f64) -> Result<WilcoxonResult> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidConfig(alloc::format!(
            "alpha = {alpha} is outside [0, 1]"
        )));
    }

    let mut diffs = Vec::with_capacity(a.len());
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        let d = x - y;
        if d.is_nan() {
            return Err(Error::NonFiniteInput { index: i });
        }
        if d != 0.0 {
            diffs.push(d);
        }
    }
    let n = diffs.len();
    if n == 0 {
        return Ok(WilcoxonResult {
            t_plus: 0.0,
            t_minus: 0.0,
            n_effective: 0,
            p_value: 1.0,
            alpha,
            verdict: Verdict::Equal,
        });
    }

    diffs.sort_by(|x, y| fabs(*x).total_cmp(&fabs(*y)));
    // Doubled ranks keep tie averages integral.
    let mut ranks2 = vec![0u64; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && fabs(diffs[j + 1]) == fabs(diffs[i]) {
            j += 1;
        }
        let doubled_average = (i + 1 + j + 1) as u64;
        ranks2[i..=j].fill(doubled_average);
        i = j + 1;
    }

    let t_plus2: u64 = diffs
        .iter()
        .zip(&ranks2)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| r)
        .sum();
    let total2: u64 = ranks2.iter().sum();
    let t_minus2 = total2 - t_plus2;

    let dist = rank_sum_distribution(&ranks2);
    let t = t_plus2 as usize;
    let lower: f64 = dist[..=t].iter().sum();
    let upper: f64 = dist[t..].iter().sum();
    let p_value = (2.0 * lower.min(upper)).min(1.0);

    let verdict = if p_value < alpha {
        match t_plus2.cmp(&t_minus2) {
            core::cmp::Ordering::Less => Verdict::Plus,
            core::cmp::Ordering::Greater => Verdict::Minus,
            core::cmp::Ordering::Equal => Verdict::Equal,
        }
    } else {
        Verdict::Equal
    };

    Ok(WilcoxonResult {
        t_plus: t_plus2 as f64 / 2.0,
        t_minus: t_minus2 as f64 / 2.0,
        n_effective: n,
        p_value,
        alpha,
        verdict,
    })
}

/// Null probabilities of each achievable (doubled) rank sum, indexed by sum.
fn rank_sum_distribution(ranks2: &[u64]) -> Vec<f64> {
    let total = ranks2.iter().sum::<u64>() as usize;
    let mut dist = vec![0.0; total + 1];
    dist[0] = 1.0;
    let mut reach = 0;
    for &r in ranks2 {
        let r = r as usize;
        reach += r;
        for s in (0..=reach).rev() {
            let with = if s >= r { dist[s - r] } else { 0.0 };
            dist[s] = 0.5 * (dist[s] + with);
        }
    }
    dist
}

/// Null frequencies of the tie-free rank sum for `n` pairs: entry `s` counts
/// the sign assignments whose positive ranks sum to `s`, for
/// `s = 0..=n(n+1)/2`.
pub fn exact_signed_rank_distribution(n: usize) -> Result<Vec<u64>> {
    if !(1..=30).contains(&n) {
        return Err(Error::RankTableOutOfRange(n));
    }
    let max = n * (n + 1) / 2;
    let mut counts = vec![0u64; max + 1];
    counts[0] = 1;
    let mut reach = 0;
    for r in 1..=n {
        reach += r;
        for s in (r..=reach).rev() {
            counts[s] += counts[s - r];
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Randomness, TrialRng};

    /// Counts sign assignments over ranks `1..=n` by enumeration.
    fn brute_force_counts(n: usize) -> Vec<u64> {
        let max = n * (n + 1) / 2;
        let mut counts = vec![0u64; max + 1];
        for mask in 0u32..(1 << n) {
            let s: usize = (0..n).filter(|k| mask & (1 << k) != 0).map(|k| k + 1).sum();
            counts[s] += 1;
        }
        counts
    }

    /// Two-sided p-value by enumerating all sign patterns of tie-free data.
    fn brute_force_p(diffs: &[f64]) -> f64 {
        let mut abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
        abs.sort_by(f64::total_cmp);
        let rank = |v: f64| abs.iter().position(|&x| x == v).unwrap() + 1;
        let t_obs: usize = diffs.iter().filter(|d| **d > 0.0).map(|d| rank(d.abs())).sum();
        let n = diffs.len();
        let (mut le, mut ge) = (0u64, 0u64);
        for mask in 0u32..(1 << n) {
            let s: usize = (0..n).filter(|k| mask & (1 << k) != 0).map(|k| k + 1).sum();
            if s <= t_obs {
                le += 1;
            }
            if s >= t_obs {
                ge += 1;
            }
        }
        let total = (1u64 << n) as f64;
        (2.0 * (le.min(ge) as f64) / total).min(1.0)
    }

    #[test]
    fn identical_samples() {
        let a = [1.0, 2.0, 3.0];
        let r = wilcoxon_signed_rank(&a, &a, 0.05).unwrap();
        assert_eq!((r.n_effective, r.p_value, r.verdict), (0, 1.0, Verdict::Equal));
    }

    #[test]
    fn five_pair_example() {
        let a = [1.0, -2.0, 3.0, -4.0, 5.0];
        let r = wilcoxon_signed_rank(&a, &[0.0; 5], 0.05).unwrap();
        assert_eq!((r.t_plus, r.t_minus), (9.0, 6.0));
        assert_eq!(r.p_value, 0.8125);
        assert_eq!(r.p_value, brute_force_p(&a));
        assert_eq!(r.verdict, Verdict::Equal);
    }

    #[test]
    fn total_dominance_at_thirty() {
        let a: Vec<f64> = (0..30).map(|i| i as f64).collect();
        let b: Vec<f64> = (0..30).map(|i| i as f64 + 1.0 + i as f64 * 0.1).collect();
        let r = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
        assert_eq!((r.t_plus, r.t_minus), (0.0, 465.0));
        assert_eq!(r.p_value, 2.0 * libm::pow(2.0, -30.0));
        assert_eq!(r.verdict, Verdict::Plus);
        let back = wilcoxon_signed_rank(&b, &a, 0.05).unwrap();
        assert_eq!((back.t_plus, back.verdict), (465.0, Verdict::Minus));
    }

    #[test]
    fn ties_use_average_ranks() {
        // |d| = 1, 1, 2 → ranks 1.5, 1.5, 3.
        let r = wilcoxon_signed_rank(&[1.0, -1.0, 2.0], &[0.0; 3], 0.05).unwrap();
        assert_eq!((r.t_plus, r.t_minus), (4.5, 1.5));
        // Sign patterns over {1.5, 1.5, 3}: sums 0, 1.5, 1.5, 3, 3, 4.5, 4.5, 6.
        // P(T ≥ 4.5) = 3/8, P(T ≤ 4.5) = 7/8.
        assert_eq!(r.p_value, 0.75);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            wilcoxon_signed_rank(&[1.0], &[1.0, 2.0], 0.05),
            Err(Error::LengthMismatch { .. })
        ));
        assert_eq!(wilcoxon_signed_rank(&[], &[], 0.05), Err(Error::EmptyInput));
        assert!(wilcoxon_signed_rank(&[f64::NAN], &[0.0], 0.05).is_err());
    }

    #[test]
    fn distribution_tables() {
        assert_eq!(exact_signed_rank_distribution(1).unwrap(), vec![1, 1]);
        let three = exact_signed_rank_distribution(3).unwrap();
        assert_eq!(three, brute_force_counts(3));
        assert_eq!(three, vec![1, 1, 1, 2, 1, 1, 1]);
        for n in 1..=16 {
            assert_eq!(exact_signed_rank_distribution(n).unwrap(), brute_force_counts(n));
        }
        let thirty = exact_signed_rank_distribution(30).unwrap();
        assert_eq!(thirty.len() - 1, 465);
        assert_eq!(thirty.iter().sum::<u64>(), 1 << 30);
        assert!(thirty.iter().eq(thirty.iter().rev()));
        assert_eq!(exact_signed_rank_distribution(0), Err(Error::RankTableOutOfRange(0)));
        assert_eq!(exact_signed_rank_distribution(31), Err(Error::RankTableOutOfRange(31)));
    }

    #[test]
    fn dp_matches_enumeration() {
        let mut rng = TrialRng::new(2024);
        for _ in 0..200 {
            let n = 1 + rng.below(12);
            // Distinct magnitudes with random signs: tie-free by construction.
            let mut mags: Vec<f64> = (1..=n).map(|k| k as f64 + rng.uniform() * 0.5).collect();
            rng.shuffle(&mut mags);
            let diffs: Vec<f64> = mags.iter().map(|&m| if rng.uniform() < 0.5 { -m } else { m }).collect();
            let r = wilcoxon_signed_rank(&diffs, &vec![0.0; n], 0.05).unwrap();
            assert!((r.p_value - brute_force_p(&diffs)).abs() <= 1e-12);
        }
    }

    proptest::proptest! {
        #[test]
        fn rank_sum_identity_and_antisymmetry(
            pairs in proptest::collection::vec((-100i32..100, -100i32..100), 1..40)
        ) {
            let a: Vec<f64> = pairs.iter().map(|p| p.0 as f64).collect();
            let b: Vec<f64> = pairs.iter().map(|p| p.1 as f64).collect();
            let ab = wilcoxon_signed_rank(&a, &b, 0.05).unwrap();
            let n = ab.n_effective as f64;
            proptest::prop_assert_eq!(ab.t_plus + ab.t_minus, n * (n + 1.0) / 2.0);
            let ba = wilcoxon_signed_rank(&b, &a, 0.05).unwrap();
            proptest::prop_assert_eq!((ab.t_plus, ab.t_minus), (ba.t_minus, ba.t_plus));
            proptest::prop_assert_eq!(ab.p_value, ba.p_value);
            proptest::prop_assert_eq!(ab.verdict, ba.verdict.flipped());
            proptest::prop_assert!((0.0..=1.0).contains(&ab.p_value));

            for scale in [0.25, 3.0, 1024.0] {
                let sa: Vec<f64> = a.iter().map(|v| v * scale).collect();
                let sb: Vec<f64> = b.iter().map(|v| v * scale).collect();
                let s = wilcoxon_signed_rank(&sa, &sb, 0.05).unwrap();
                proptest::prop_assert_eq!((s.t_plus, s.t_minus, s.verdict), (ab.t_plus, ab.t_minus, ab.verdict));
            }
        }
    }
}
