use alloc::vec::Vec;
use core::fmt;

use super::Verdict;

/// Counts of `+`, `=` and `−` verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tally {
    pub plus: usize,
    pub equal: usize,
    pub minus: usize,
}

impl Tally {
    pub fn total(&self) -> usize {
        self.plus + self.equal + self.minus
    }
}

/// Renders as `plus/equal/minus`, e.g. `4/0/0`.
impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.plus, self.equal, self.minus)
    }
}

pub fn tally(verdicts: &[Verdict]) -> Tally {
    verdicts.iter().fold(Tally::default(), |mut t, v| {
        match v {
            Verdict::Plus => t.plus += 1,
            Verdict::Equal => t.equal += 1,
            Verdict::Minus => t.minus += 1,
        }
        t
    })
}

/// Per-problem verdicts of one baseline-vs-rival pairing.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComparisonSummary {
    pub verdicts: Vec<Verdict>,
    pub tally: Tally,
}

impl ComparisonSummary {
    pub fn new(verdicts: Vec<Verdict>) -> Self {
        let tally = tally(&verdicts);
        Self { verdicts, tally }
    }
}
