//! Benchmark harness: four generator workloads timed with overhead
//! subtraction, median/mode central tendency and MAD spread.
//!
//! Pin the process to one core (e.g. `taskset -c 2`) and disable frequency
//! scaling for stable numbers; the harness itself does not pin.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::aes::{AesError, Backend};
use crate::baselines::{Mt19937_64, SplitMix64};
use crate::distributions::{fisher_yates, monte_carlo_pi, reservoir_sample_slice};
use crate::generator::{Randen, Seed};
use crate::permutation::KeySchedule;
use crate::source::RandomSource;

mod measure;
mod timer;

pub use measure::{
    discrete_mode, median, median_absolute_deviation, robust_measure, Measurement, MIN_REPETITIONS,
    MODE_MIN_REPETITIONS,
};
pub use timer::{calibrate_timer, Calibration, TimeUnit, Timer};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("need at least {MIN_REPETITIONS} repetitions, got {0}")]
    TooFewRepetitions(usize),
    #[error("workload consumed zero bytes")]
    ZeroBytes,
    #[error("timer went backwards")]
    NonMonotonic,
    #[error("unknown benchmark kind {0:?}")]
    UnknownKind(String),
    #[error("unknown engine {0:?}")]
    UnknownEngine(String),
    #[error("workload check failed: {0}")]
    Workload(String),
    #[error(transparent)]
    Aes(#[from] AesError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchKind {
    Loop,
    Shuffle,
    Sample,
    MonteCarlo,
}

impl BenchKind {
    pub const ALL: [BenchKind; 4] = [BenchKind::Loop, BenchKind::Shuffle, BenchKind::Sample, BenchKind::MonteCarlo];

    pub fn name(self) -> &'static str {
        match self {
            BenchKind::Loop => "loop",
            BenchKind::Shuffle => "shuffle",
            BenchKind::Sample => "sample",
            BenchKind::MonteCarlo => "montecarlo",
        }
    }
}

impl fmt::Display for BenchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchKind {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BenchKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| BenchError::UnknownKind(s.to_string()))
    }
}

/// Benchmark contenders. Every engine is deterministic for a fixed seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EngineKind {
    /// Randen on AES hardware.
    Randen,
    /// Randen on the table-driven software AES round.
    RandenSoftware,
    Mt19937_64,
    SplitMix64,
}

impl EngineKind {
    pub const ALL: [EngineKind; 4] =
        [EngineKind::Randen, EngineKind::RandenSoftware, EngineKind::Mt19937_64, EngineKind::SplitMix64];

    pub fn name(self) -> &'static str {
        match self {
            EngineKind::Randen => "randen",
            EngineKind::RandenSoftware => "randen-sw",
            EngineKind::Mt19937_64 => "mt19937-64",
            EngineKind::SplitMix64 => "splitmix64",
        }
    }

    pub fn is_available(self) -> bool {
        self != EngineKind::Randen || crate::aes::hardware_available()
    }

    /// The Randen flavour speedups are reported against.
    pub fn reference() -> Self {
        if EngineKind::Randen.is_available() {
            EngineKind::Randen
        } else {
            EngineKind::RandenSoftware
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EngineKind {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EngineKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| BenchError::UnknownEngine(s.to_string()))
    }
}

/// A constructed engine. Dispatch happens once per workload, not per draw.
#[allow(clippy::large_enum_variant)]
pub enum EngineHandle {
    Randen(Randen),
    Mt19937_64(Mt19937_64),
    SplitMix64(SplitMix64),
}

impl EngineHandle {
    pub fn new(kind: EngineKind, seed: Seed) -> Result<Self, BenchError> {
        let keys = KeySchedule::builtin_pi();
        Ok(match kind {
            EngineKind::Randen => EngineHandle::Randen(Randen::with_keys(seed, keys, Backend::hardware()?)),
            EngineKind::RandenSoftware => EngineHandle::Randen(Randen::with_keys(seed, keys, Backend::software())),
            EngineKind::Mt19937_64 => EngineHandle::Mt19937_64(Mt19937_64::new(seed.s0)),
            EngineKind::SplitMix64 => EngineHandle::SplitMix64(SplitMix64::new(seed.s0)),
        })
    }
}

impl RandomSource for EngineHandle {
    fn next_u64(&mut self) -> u64 {
        match self {
            EngineHandle::Randen(r) => r.next_u64(),
            EngineHandle::Mt19937_64(r) => r.next_u64(),
            EngineHandle::SplitMix64(r) => r.next_u64(),
        }
    }
}

/// Workload sizes; defaults are 800 KB of raw draws, a 400 KB shuffle,
/// an 80 KB reservoir over a 400 KB stream and 100,000 Monte Carlo points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WorkloadSizes {
    pub loop_bytes: usize,
    pub shuffle_len: usize,
    pub stream_len: usize,
    pub reservoir_len: usize,
    pub montecarlo_points: u64,
}

impl Default for WorkloadSizes {
    fn default() -> Self {
        WorkloadSizes {
            loop_bytes: 800 * 1024,
            shuffle_len: 400 * 1000 / 4,
            stream_len: 400 * 1024 / 8,
            reservoir_len: 80 * 1024 / 8,
            montecarlo_points: 100_000,
        }
    }
}

impl WorkloadSizes {
    /// Generator bytes consumed by one repetition of `kind`.
    pub fn bytes(&self, kind: BenchKind) -> u64 {
        8 * match kind {
            BenchKind::Loop => (self.loop_bytes / 8) as u64,
            BenchKind::Shuffle => self.shuffle_len.saturating_sub(1) as u64,
            BenchKind::Sample => self.stream_len.saturating_sub(self.reservoir_len) as u64,
            BenchKind::MonteCarlo => 2 * self.montecarlo_points,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub repetitions: usize,
    pub seed: Seed,
    pub sizes: WorkloadSizes,
    pub timer: Timer,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { repetitions: 31, seed: Seed::new(1, 2, 3, 4), sizes: WorkloadSizes::default(), timer: Timer::detect() }
    }
}

fn measure_workload<R: RandomSource>(
    kind: BenchKind,
    mut rng: R,
    config: &BenchConfig,
    calibration: &Calibration,
) -> Result<Measurement, BenchError> {
    let sizes = config.sizes;
    let reps = config.repetitions;
    let timer = &config.timer;
    let bytes = sizes.bytes(kind);
    match kind {
        BenchKind::Loop => {
            let draws = sizes.loop_bytes / 8;
            robust_measure(timer, calibration, reps, || {
                let mut acc = 0u64;
                for _ in 0..draws {
                    acc ^= rng.next_u64();
                }
                black_box(acc);
                bytes
            })
        }
        BenchKind::Shuffle => {
            let mut items: Vec<u32> = (0..sizes.shuffle_len as u32).collect();
            let m = robust_measure(timer, calibration, reps, || {
                fisher_yates(&mut rng, &mut items);
                black_box(items.as_ptr());
                bytes
            })?;
            let mut sorted = items.clone();
            sorted.sort_unstable();
            if !sorted.iter().enumerate().all(|(i, &v)| v == i as u32) {
                return Err(BenchError::Workload("shuffle output is not a permutation".into()));
            }
            Ok(m)
        }
        BenchKind::Sample => {
            let stream: Vec<u64> = (0..sizes.stream_len as u64).collect();
            let k = sizes.reservoir_len;
            let mut bad = None;
            let m = robust_measure(timer, calibration, reps, || {
                match reservoir_sample_slice(&mut rng, &stream, k) {
                    Ok(r) if r.len() == k => {
                        black_box(&r);
                    }
                    Ok(r) => bad = Some(format!("reservoir has {} items, expected {k}", r.len())),
                    Err(e) => bad = Some(e.to_string()),
                }
                bytes
            })?;
            bad.map_or(Ok(m), |e| Err(BenchError::Workload(e)))
        }
        BenchKind::MonteCarlo => {
            let n = sizes.montecarlo_points;
            let mut worst = 0.0f64;
            let mut failed = None;
            let m = robust_measure(timer, calibration, reps, || {
                match monte_carlo_pi(&mut rng, n) {
                    Ok(pi) => worst = worst.max((pi - std::f64::consts::PI).abs()),
                    Err(e) => failed = Some(e.to_string()),
                }
                bytes
            })?;
            if let Some(e) = failed {
                return Err(BenchError::Workload(e));
            }
            // 0.05 is > 9 sigma at 10^5 points; skip the check for tiny runs.
            if n >= 100_000 && worst > 0.05 {
                return Err(BenchError::Workload(format!("pi estimate off by {worst}")));
            }
            Ok(m)
        }
    }
}

/// Times one workload on one freshly seeded engine.
pub fn run_benchmark(
    kind: BenchKind,
    engine: EngineKind,
    config: &BenchConfig,
    calibration: &Calibration,
) -> Result<Measurement, BenchError> {
    match EngineHandle::new(engine, config.seed)? {
        EngineHandle::Randen(r) => measure_workload(kind, r, config, calibration),
        EngineHandle::Mt19937_64(r) => measure_workload(kind, r, config, calibration),
        EngineHandle::SplitMix64(r) => measure_workload(kind, r, config, calibration),
    }
}

/// One report line: engine cost and its ratio to Randen's cost on the same
/// workload (values above 1 mean Randen is faster).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub kind: BenchKind,
    pub engine: String,
    pub central: f64,
    pub mad: f64,
    pub unit: TimeUnit,
    pub bytes: u64,
    pub speedup_vs_randen: Option<f64>,
}

pub fn speedup(other: &Measurement, randen: &Measurement) -> Option<f64> {
    (randen.central > 0.0).then(|| other.central / randen.central)
}

/// Runs every `(kind, engine)` pair. The reference Randen engine is always
/// measured so each row can carry a speedup; unavailable engines are skipped.
pub fn run_suite(kinds: &[BenchKind], engines: &[EngineKind], config: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    let calibration = calibrate_timer(&config.timer)?;
    let reference = EngineKind::reference();
    let mut rows = Vec::new();
    for &kind in kinds {
        let base = run_benchmark(kind, reference, config, &calibration)?;
        for &engine in engines.iter().filter(|e| e.is_available()) {
            let m = if engine == reference { base } else { run_benchmark(kind, engine, config, &calibration)? };
            rows.push(BenchRow {
                kind,
                engine: engine.name().to_string(),
                central: m.central,
                mad: m.mad,
                unit: m.unit,
                bytes: m.bytes,
                speedup_vs_randen: speedup(&m, &base),
            });
        }
    }
    Ok(rows)
}

/// Text table per workload: `Engine | cost/byte (MAD) | Speedup`.
pub fn format_report(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    for kind in BenchKind::ALL {
        let group: Vec<&BenchRow> = rows.iter().filter(|r| r.kind == kind).collect();
        let Some(first) = group.first() else { continue };
        out += &format!("{kind}: {} per byte\n", first.unit);
        out += &format!("{:>12} | {:>20} | {:>7}\n", "Engine", "cost (MAD)", "Speedup");
        for r in group {
            let speedup = match r.speedup_vs_randen {
                Some(_) if r.engine == EngineKind::reference().name() => "--".to_string(),
                Some(s) => format!("{s:.1}"),
                None => "n/a".to_string(),
            };
            let cost = format!("{:.2} (\u{b1} {:.3})", r.central, r.mad);
            out += &format!("{:>12} | {:>20} | {:>7}\n", r.engine, cost, speedup);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> BenchConfig {
        BenchConfig {
            repetitions: 5,
            sizes: WorkloadSizes {
                loop_bytes: 8 * 512,
                shuffle_len: 1000,
                stream_len: 1000,
                reservoir_len: 100,
                montecarlo_points: 1000,
            },
            ..BenchConfig::default()
        }
    }

    #[test]
    fn default_sizes_match_workloads() {
        let s = WorkloadSizes::default();
        assert_eq!(s.bytes(BenchKind::Loop), 819_200);
        assert_eq!(s.shuffle_len, 100_000);
        assert_eq!(s.stream_len, 51_200);
        assert_eq!(s.reservoir_len, 10_240);
        assert_eq!(s.bytes(BenchKind::MonteCarlo), 8 * 200_000);
        assert_eq!(s.bytes(BenchKind::Shuffle), 8 * 99_999);
    }

    #[test]
    fn names_round_trip() {
        for k in BenchKind::ALL {
            assert_eq!(k.name().parse::<BenchKind>().unwrap(), k);
        }
        for e in EngineKind::ALL {
            assert_eq!(e.name().parse::<EngineKind>().unwrap(), e);
        }
        assert!(matches!("chacha".parse::<EngineKind>(), Err(BenchError::UnknownEngine(_))));
        assert!(matches!("sort".parse::<BenchKind>(), Err(BenchError::UnknownKind(_))));
    }

    #[test]
    fn one_element_shuffle_is_rejected() {
        let mut cfg = tiny();
        cfg.sizes.shuffle_len = 1;
        let cal = calibrate_timer(&cfg.timer).unwrap();
        let r = run_benchmark(BenchKind::Shuffle, EngineKind::SplitMix64, &cfg, &cal);
        assert!(matches!(r, Err(BenchError::ZeroBytes)));
    }

    #[test]
    fn every_workload_runs() {
        let cfg = tiny();
        let cal = calibrate_timer(&cfg.timer).unwrap();
        for kind in BenchKind::ALL {
            let m = run_benchmark(kind, EngineKind::RandenSoftware, &cfg, &cal).unwrap();
            assert_eq!(m.bytes, cfg.sizes.bytes(kind));
            assert!(m.mad >= 0.0);
        }
    }

    #[test]
    fn equal_engines_have_unit_speedup() {
        let m = Measurement { central: 2.5, mad: 0.1, unit: TimeUnit::Cycles, bytes: 8, repetitions: 5 };
        assert_eq!(speedup(&m, &m), Some(1.0));
        let zero = Measurement { central: 0.0, ..m };
        assert_eq!(speedup(&m, &zero), None);
    }

    #[test]
    fn suite_rows_and_report() {
        let cfg = tiny();
        let rows = run_suite(&[BenchKind::Loop], &[EngineKind::SplitMix64, EngineKind::Mt19937_64], &cfg).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.speedup_vs_randen.is_some()));
        let text = format_report(&rows);
        assert!(text.contains("splitmix64") && text.contains("Speedup"));
        let json = serde_json::to_value(&rows[0]).unwrap();
        for key in ["kind", "engine", "central", "mad", "unit", "bytes", "speedup_vs_randen"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["kind"], "loop");
    }

    #[test]
    fn engine_streams_are_deterministic() {
        for e in EngineKind::ALL.into_iter().filter(|e| e.is_available()) {
            let mut a = EngineHandle::new(e, Seed::new(9, 9, 9, 9)).unwrap();
            let mut b = EngineHandle::new(e, Seed::new(9, 9, 9, 9)).unwrap();
            for _ in 0..1000 {
                assert_eq!(a.next_u64(), b.next_u64());
            }
        }
    }
}
