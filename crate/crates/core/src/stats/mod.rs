//! Descriptive measures, the exact Wilcoxon signed-rank test and `+/=/−`
//! tallies.
mod descriptive;
mod tally;
mod wilcoxon;

pub use descriptive::{descriptive, DescriptiveStats};
pub use tally::{tally, ComparisonSummary, Tally};
pub use wilcoxon::{exact_signed_rank_distribution, wilcoxon_signed_rank, Verdict, WilcoxonResult};
