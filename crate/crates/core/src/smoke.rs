//! Quick statistical sanity checks on raw output. These catch gross defects
//! (stuck bits, broken buffers); they do not replace TestU01 or PractRand.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::generator::{Randen, Seed};

pub const SMOKE_BYTES: usize = 8 * 1024 * 1024;
/// About four standard deviations for 2^26 bits.
pub const MONOBIT_TOLERANCE: f64 = 2.5e-4;
pub const CHI_SQUARE_P_MIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmokeReport {
    pub bytes: usize,
    pub ones_fraction: f64,
    pub chi_square: f64,
    /// Upper-tail probability of `chi_square` with 255 degrees of freedom.
    pub p_value: f64,
}

impl SmokeReport {
    pub fn monobit_ok(&self) -> bool {
        (self.ones_fraction - 0.5).abs() <= MONOBIT_TOLERANCE
    }

    pub fn chi_square_ok(&self) -> bool {
        (CHI_SQUARE_P_MIN..=1.0 - CHI_SQUARE_P_MIN).contains(&self.p_value)
    }

    pub fn passed(&self) -> bool {
        self.monobit_ok() && self.chi_square_ok()
    }
}

pub fn analyze(bytes: &[u8]) -> SmokeReport {
    let mut counts = [0u64; 256];
    let mut ones = 0u64;
    for &b in bytes {
        counts[b as usize] += 1;
        ones += b.count_ones() as u64;
    }
    let n = bytes.len() as f64;
    let expected = n / 256.0;
    let chi_square: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let p_value = ChiSquared::new(255.0).expect("valid dof").sf(chi_square);
    SmokeReport { bytes: bytes.len(), ones_fraction: ones as f64 / (8.0 * n), chi_square, p_value }
}

/// Runs the checks on `SMOKE_BYTES` of output from `seed`.
pub fn smoke_test(seed: Seed) -> SmokeReport {
    let mut rng = Randen::new(seed);
    let mut buf = vec![0u8; SMOKE_BYTES];
    rng.fill_bytes(&mut buf);
    analyze(&buf)
}
