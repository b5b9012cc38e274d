//! Fenced high-resolution timestamps.
//!
//! On x86 with an invariant TSC, timestamps are TSC cycles read between
//! `lfence`s (`rdtscp` at the end so prior work retires first). Elsewhere they
//! are monotonic nanoseconds, optionally rescaled to cycles with a nominal
//! clock frequency.

use std::sync::atomic::{compiler_fence, Ordering};
use std::time::Instant;

use serde::Serialize;

use super::BenchError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeUnit {
    Cycles,
    Ns,
}

impl std::fmt::Display for TimeUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TimeUnit::Cycles => "cycles",
            TimeUnit::Ns => "ns",
        })
    }
}

#[derive(Clone, Copy, Debug)]
enum Source {
    #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
    Tsc,
    Monotonic(Instant),
}

#[derive(Clone, Copy, Debug)]
pub struct Timer {
    source: Source,
    /// Multiplier from raw ticks to `unit`.
    scale: f64,
    unit: TimeUnit,
}

#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
fn has_invariant_tsc() -> bool {
    #[cfg(target_arch = "x86")]
    use std::arch::x86::__cpuid;
    #[cfg(target_arch = "x86_64")]
    use std::arch::x86_64::__cpuid;

    let max_ext = __cpuid(0x8000_0000).eax;
    max_ext >= 0x8000_0007 && __cpuid(0x8000_0007).edx & (1 << 8) != 0
}

impl Timer {
    /// Invariant TSC if present, else monotonic nanoseconds.
    pub fn detect() -> Self {
        #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
        if has_invariant_tsc() {
            return Timer { source: Source::Tsc, scale: 1.0, unit: TimeUnit::Cycles };
        }
        Timer::monotonic()
    }

    pub fn monotonic() -> Self {
        Timer { source: Source::Monotonic(Instant::now()), scale: 1.0, unit: TimeUnit::Ns }
    }

    /// Monotonic nanoseconds reported as cycles of a `hz` clock.
    pub fn nominal_cycles(hz: f64) -> Self {
        Timer { source: Source::Monotonic(Instant::now()), scale: hz / 1e9, unit: TimeUnit::Cycles }
    }

    pub fn unit(&self) -> TimeUnit {
        self.unit
    }

    pub fn ticks_to_unit(&self, ticks: f64) -> f64 {
        ticks * self.scale
    }

    #[inline(always)]
    pub fn start(&self) -> u64 {
        compiler_fence(Ordering::SeqCst);
        let t = match self.source {
            #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
            Source::Tsc => tsc::start(),
            Source::Monotonic(base) => base.elapsed().as_nanos() as u64,
        };
        compiler_fence(Ordering::SeqCst);
        t
    }

    #[inline(always)]
    pub fn stop(&self) -> u64 {
        compiler_fence(Ordering::SeqCst);
        let t = match self.source {
            #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
            Source::Tsc => tsc::stop(),
            Source::Monotonic(base) => base.elapsed().as_nanos() as u64,
        };
        compiler_fence(Ordering::SeqCst);
        t
    }
}

#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
mod tsc {
    #[cfg(target_arch = "x86")]
    use std::arch::x86::{__rdtscp, _mm_lfence, _rdtsc};
    #[cfg(target_arch = "x86_64")]
    use std::arch::x86_64::{__rdtscp, _mm_lfence, _rdtsc};

    #[inline(always)]
    pub(super) fn start() -> u64 {
        // SAFETY: only reached when the invariant TSC was detected.
        unsafe {
            _mm_lfence();
            let t = _rdtsc();
            _mm_lfence();
            t
        }
    }

    #[inline(always)]
    pub(super) fn stop() -> u64 {
        let mut aux = 0u32;
        // SAFETY: as above; rdtscp is present on every CPU with an invariant TSC.
        unsafe {
            let t = __rdtscp(&mut aux);
            _mm_lfence();
            t
        }
    }
}

/// Timer read overhead and granularity, in raw ticks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Calibration {
    /// Median of back-to-back `start`/`stop` intervals; subtracted from every measurement.
    pub overhead: u64,
    /// Smallest nonzero difference between consecutive reads.
    pub resolution: u64,
}

const CALIBRATION_SAMPLES: usize = 2001;

pub fn calibrate_timer(timer: &Timer) -> Result<Calibration, BenchError> {
    let mut intervals = Vec::with_capacity(CALIBRATION_SAMPLES);
    let mut resolution = u64::MAX;
    for _ in 0..CALIBRATION_SAMPLES {
        let t0 = timer.start();
        let t1 = timer.stop();
        if t1 < t0 {
            return Err(BenchError::NonMonotonic);
        }
        intervals.push(t1 - t0);
        if t1 > t0 {
            resolution = resolution.min(t1 - t0);
        }
    }
    intervals.sort_unstable();
    Ok(Calibration {
        overhead: intervals[intervals.len() / 2],
        resolution: if resolution == u64::MAX { 1 } else { resolution },
    })
}
