use std::hint::black_box;

use serde::Serialize;

use super::timer::{Calibration, TimeUnit, Timer};
use super::BenchError;

pub const MIN_REPETITIONS: usize = 5;

/// Repetition count from which the mode may replace the median.
pub const MODE_MIN_REPETITIONS: usize = 64;

/// Robust per-byte timing result.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Measurement {
    /// Median (or mode) cost per byte. Zero only for workloads too short to
    /// resolve after overhead subtraction.
    pub central: f64,
    /// Median absolute deviation from the median, per byte.
    pub mad: f64,
    pub unit: TimeUnit,
    /// Bytes of generator output consumed per repetition.
    pub bytes: u64,
    pub repetitions: usize,
}

impl Measurement {
    /// `mad / central`, or `None` when `central` is zero.
    pub fn variability(&self) -> Option<f64> {
        (self.central > 0.0).then(|| self.mad / self.central)
    }
}

pub fn median(sorted: &[u64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] as f64 + sorted[n / 2] as f64) / 2.0
    }
}

pub fn median_absolute_deviation(sorted: &[u64]) -> f64 {
    let m = median(sorted);
    let mut dev: Vec<f64> = sorted.iter().map(|&x| (x as f64 - m).abs()).collect();
    dev.sort_unstable_by(f64::total_cmp);
    let n = dev.len();
    if n % 2 == 1 {
        dev[n / 2]
    } else {
        (dev[n / 2 - 1] + dev[n / 2]) / 2.0
    }
}

/// Most frequent value, if it covers at least 1/8 of the samples.
pub fn discrete_mode(sorted: &[u64]) -> Option<u64> {
    let (mut best, mut best_count) = (0, 0);
    for run in sorted.chunk_by(|a, b| a == b) {
        if run.len() > best_count {
            best = run[0];
            best_count = run.len();
        }
    }
    (best_count * 8 >= sorted.len() && best_count > 1).then_some(best)
}

/// Times `workload` `repetitions` times. The workload returns the number of
/// generator bytes it consumed; its return value is sunk through `black_box`
/// so the work cannot be elided.
pub fn robust_measure<F>(
    timer: &Timer,
    calibration: &Calibration,
    repetitions: usize,
    mut workload: F,
) -> Result<Measurement, BenchError>
where
    F: FnMut() -> u64,
{
    if repetitions < MIN_REPETITIONS {
        return Err(BenchError::TooFewRepetitions(repetitions));
    }
    // Warm-up, also establishes the byte count.
    let bytes = black_box(workload());
    if bytes == 0 {
        return Err(BenchError::ZeroBytes);
    }

    let mut ticks = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let t0 = timer.start();
        let b = black_box(workload());
        let t1 = timer.stop();
        if t1 < t0 {
            return Err(BenchError::NonMonotonic);
        }
        if b != bytes {
            return Err(BenchError::Workload(format!("byte count changed from {bytes} to {b}")));
        }
        ticks.push((t1 - t0).saturating_sub(calibration.overhead));
    }
    ticks.sort_unstable();

    let center = match discrete_mode(&ticks) {
        Some(mode) if repetitions >= MODE_MIN_REPETITIONS => mode as f64,
        _ => median(&ticks),
    };
    let per_byte = |t: f64| timer.ticks_to_unit(t) / bytes as f64;
    Ok(Measurement {
        central: per_byte(center),
        mad: per_byte(median_absolute_deviation(&ticks)),
        unit: timer.unit(),
        bytes,
        repetitions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::timer::calibrate_timer;

    #[test]
    fn median_and_mad() {
        assert_eq!(median(&[1, 2, 3]), 2.0);
        assert_eq!(median(&[1, 2, 3, 10]), 2.5);
        // deviations from 3: 2,1,0,1,97 -> 1
        assert_eq!(median_absolute_deviation(&[1, 2, 3, 4, 100]), 1.0);
        assert_eq!(median_absolute_deviation(&[7, 7, 7]), 0.0);
    }

    #[test]
    fn mode_needs_a_dominant_value() {
        let mut v: Vec<u64> = (0..64).collect();
        assert_eq!(discrete_mode(&v), None);
        v.extend([5; 10]);
        v.sort_unstable();
        assert_eq!(discrete_mode(&v), Some(5));
    }

    #[test]
    fn too_few_repetitions() {
        let timer = Timer::monotonic();
        let cal = calibrate_timer(&timer).unwrap();
        assert!(matches!(robust_measure(&timer, &cal, 4, || 8), Err(BenchError::TooFewRepetitions(4))));
    }

    #[test]
    fn zero_byte_workload_rejected() {
        let timer = Timer::monotonic();
        let cal = calibrate_timer(&timer).unwrap();
        assert!(matches!(robust_measure(&timer, &cal, 5, || 0), Err(BenchError::ZeroBytes)));
    }

    #[test]
    fn empty_region_clamps_to_zero() {
        let timer = Timer::detect();
        let cal = Calibration { overhead: u64::MAX, resolution: 1 };
        let m = robust_measure(&timer, &cal, 5, || 1).unwrap();
        assert_eq!(m.central, 0.0);
        assert_eq!(m.mad, 0.0);
        assert_eq!(m.variability(), None);
    }
}
