//! Wall-clock and peak-memory measurement of single trials, and the
//! per-problem cost report.
//!
//! Peak memory is the high-water mark of bytes allocated minus bytes freed
//! by the current thread while the task runs. It is counted by
//! [`CountingAllocator`], installed as the global allocator when the
//! `alloc-counter` feature is on. Process RSS is never consulted.
use std::alloc::{GlobalAlloc, Layout, System};
use std::cell::Cell;
use std::time::Instant;

use swarm_arena_core::{AlgorithmId, ProblemId};

use crate::harness::{MatrixEntry, RunMatrix};

/// Cost of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CostSample {
    pub wall_time_s: f64,
    pub peak_memory_bytes: u64,
    pub profiling_enabled: bool,
}

/// Runs `task` and returns its result with the elapsed monotonic time in
/// seconds.
pub fn timed<T>(task: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = task();
    (out, start.elapsed().as_secs_f64())
}

thread_local! {
    static TRACKING: Cell<bool> = const { Cell::new(false) };
    static NET: Cell<i64> = const { Cell::new(0) };
    static PEAK: Cell<i64> = const { Cell::new(0) };
}

/// `System` plus a per-thread net-allocation counter that is only active
/// inside [`peak_memory`].
pub struct CountingAllocator;

fn record(delta: i64) {
    let _ = TRACKING.try_with(|on| {
        if on.get() {
            let net = NET.get() + delta;
            NET.set(net);
            if net > PEAK.get() {
                PEAK.set(net);
            }
        }
    });
}

unsafe impl GlobalAlloc for CountingAllocator {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let p = unsafe { System.alloc(layout) };
        if !p.is_null() {
            record(layout.size() as i64);
        }
        p
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        let p = unsafe { System.alloc_zeroed(layout) };
        if !p.is_null() {
            record(layout.size() as i64);
        }
        p
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        unsafe { System.dealloc(ptr, layout) };
        record(-(layout.size() as i64));
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        let p = unsafe { System.realloc(ptr, layout, new_size) };
        if !p.is_null() {
            record(new_size as i64 - layout.size() as i64);
        }
        p
    }
}

#[cfg(feature = "alloc-counter")]
#[global_allocator]
static GLOBAL: CountingAllocator = CountingAllocator;

/// Whether allocations can be counted in this build.
pub const fn memory_instrumented() -> bool {
    cfg!(feature = "alloc-counter")
}

/// Runs `task` and returns its result with the peak net bytes it allocated
/// on this thread. Returns 0 and logs a warning when the counting allocator
/// is not installed.
pub fn peak_memory<T>(task: impl FnOnce() -> T) -> (T, u64) {
    if !memory_instrumented() {
        log::warn!("allocation counter not installed; peak memory reported as 0");
        return (task(), 0);
    }
    let outer = (TRACKING.get(), NET.get(), PEAK.get());
    TRACKING.set(true);
    NET.set(0);
    PEAK.set(0);
    let out = task();
    let peak = PEAK.get().max(0);
    TRACKING.set(outer.0);
    NET.set(outer.1 + NET.get());
    PEAK.set(outer.2.max(outer.1 + peak));
    (out, peak as u64)
}

/// Runs `task` under the requested instruments.
pub fn measure<T>(time: bool, memory: bool, task: impl FnOnce() -> T) -> (T, CostSample) {
    let enabled = time || memory;
    let ((out, secs), bytes) = if memory {
        peak_memory(|| timed(task))
    } else if time {
        (timed(task), 0)
    } else {
        ((task(), 0.0), 0)
    };
    let sample = CostSample {
        wall_time_s: secs,
        peak_memory_bytes: bytes,
        profiling_enabled: enabled,
    };
    (out, sample)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CostMetric {
    WallTime,
    PeakMemory,
}

impl CostMetric {
    pub const ALL: [CostMetric; 2] = [CostMetric::WallTime, CostMetric::PeakMemory];

    pub fn name(self) -> &'static str {
        match self {
            CostMetric::WallTime => "wall_time_s",
            CostMetric::PeakMemory => "peak_memory_bytes",
        }
    }
}

/// Mean cost of every algorithm on one problem, for one metric.
#[derive(Debug, Clone, PartialEq)]
pub struct CostRow {
    pub problem: ProblemId,
    pub metric: CostMetric,
    /// In algorithm index order.
    pub means: Vec<(AlgorithmId, f64)>,
    pub winner: AlgorithmId,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CostReport {
    pub rows: Vec<CostRow>,
}

impl CostReport {
    pub fn row(&self, problem: ProblemId, metric: CostMetric) -> Option<&CostRow> {
        self.rows.iter().find(|r| r.problem == problem && r.metric == metric)
    }

    pub fn mean(&self, problem: ProblemId, algorithm: AlgorithmId, metric: CostMetric) -> Option<f64> {
        self.row(problem, metric)?
            .means
            .iter()
            .find(|(a, _)| *a == algorithm)
            .map(|&(_, m)| m)
    }
}

/// Index of the smallest value; the first one wins ties.
pub fn argmin_first(values: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        if best.is_none_or(|b| v < values[b]) {
            best = Some(i);
        }
    }
    best
}

/// Mean wall time and mean peak memory per problem and algorithm, pooled over
/// variants and runs. One row per problem per metric; the winner is the
/// algorithm with the smallest mean, ties going to the lowest index.
pub fn cost_report(matrix: &RunMatrix) -> CostReport {
    cost_report_of(matrix.entries())
}

/// [`cost_report`] over entries sorted by key.
pub fn cost_report_of(entries: &[MatrixEntry]) -> CostReport {
    let mut rows = Vec::new();
    let mut problems: Vec<ProblemId> = entries.iter().map(|e| e.key.problem).collect();
    problems.dedup();
    for problem in problems {
        let mut algorithms: Vec<AlgorithmId> = entries
            .iter()
            .filter(|e| e.key.problem == problem)
            .map(|e| e.key.algorithm)
            .collect();
        algorithms.dedup();
        for metric in CostMetric::ALL {
            let means: Vec<(AlgorithmId, f64)> = algorithms
                .iter()
                .map(|&a| {
                    let values: Vec<f64> = entries
                        .iter()
                        .filter(|e| e.key.problem == problem && e.key.algorithm == a)
                        .map(|e| match metric {
                            CostMetric::WallTime => e.record.wall_time_s,
                            CostMetric::PeakMemory => e.record.peak_memory_bytes as f64,
                        })
                        .collect();
                    (a, values.iter().sum::<f64>() / values.len() as f64)
                })
                .collect();
            let m: Vec<f64> = means.iter().map(|&(_, m)| m).collect();
            let winner = means[argmin_first(&m).expect("at least one algorithm")].0;
            rows.push(CostRow {
                problem,
                metric,
                means,
                winner,
            });
        }
    }
    CostReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::hint::black_box;

    #[test]
    fn timing_bounds() {
        let ((), t) = timed(|| ());
        assert!((0.0..0.1).contains(&t));

        let ((), t) = timed(|| {
            let start = Instant::now();
            while start.elapsed().as_millis() < 50 {
                black_box(0);
            }
        });
        assert!((0.04..=1.0).contains(&t), "{t}");

        let ((_, inner), outer) = timed(|| timed(|| black_box(vec![0u8; 1000])));
        assert!(outer >= inner);
    }

    #[cfg(feature = "alloc-counter")]
    #[test]
    fn peak_of_one_buffer() {
        let (_, peak) = peak_memory(|| black_box(vec![1u8; 1 << 20]));
        assert!(peak >= 1 << 20);
    }

    #[cfg(feature = "alloc-counter")]
    #[test]
    fn sequential_buffers_do_not_stack() {
        let ((), slack) = peak_memory(|| ());
        let ((), peak) = peak_memory(|| {
            drop(black_box(vec![1u8; 1 << 20]));
            drop(black_box(vec![2u8; 1 << 20]));
        });
        assert!(peak >= 1 << 20);
        assert!(peak < 2 * (1 << 20) + slack + 4096, "{peak}");
    }

    #[cfg(feature = "alloc-counter")]
    #[test]
    fn nested_scopes_propagate_to_outer() {
        let ((_, inner), outer) = peak_memory(|| peak_memory(|| black_box(vec![0u8; 4096])));
        assert!(inner >= 4096);
        assert!(outer >= inner);
    }

    #[test]
    fn disabled_measurement_is_zero() {
        let (v, c) = measure(false, false, || 3);
        assert_eq!(v, 3);
        assert_eq!(c, CostSample::default());
        let (_, c) = measure(true, false, || ());
        assert_eq!(c.peak_memory_bytes, 0);
        assert!(c.profiling_enabled);
    }

    #[test]
    fn first_index_wins_ties() {
        assert_eq!(argmin_first(&[2.0, 1.0, 1.0]), Some(1));
        assert_eq!(argmin_first(&[1.0, 1.0]), Some(0));
        assert_eq!(argmin_first(&[]), None);
    }
}
