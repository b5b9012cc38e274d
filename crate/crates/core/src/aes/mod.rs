//! Single AES encryption round with interchangeable hardware and software backends.
//!
//! # Byte order
//!
//! A [`Block128`] is 16 bytes in serialization order. AES state cell (row `r`,
//! column `c`) is byte `4 * c + r`, which is also the memory layout a 128-bit
//! load hands to `AESENC` on little-endian machines. Golden vectors elsewhere
//! in the crate depend on this convention; other implementations that pack
//! branches differently will not be bit-compatible.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::baselines::SplitMix64;
use crate::source::RandomSource;

pub(crate) mod hw;
pub mod soft;

/// One 128-bit Feistel branch, or equivalently one AES block.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
#[repr(transparent)]
pub struct Block128(pub [u8; 16]);

impl Block128 {
    pub const ZERO: Block128 = Block128([0; 16]);

    pub const fn from_bytes(bytes: [u8; 16]) -> Self {
        Block128(bytes)
    }

    pub const fn to_bytes(self) -> [u8; 16] {
        self.0
    }

    /// Builds a block from two little-endian 64-bit halves (`lo` is bytes 0..8).
    pub fn from_u64s(lo: u64, hi: u64) -> Self {
        let mut b = [0u8; 16];
        b[..8].copy_from_slice(&lo.to_le_bytes());
        b[8..].copy_from_slice(&hi.to_le_bytes());
        Block128(b)
    }

    pub fn to_u64s(self) -> (u64, u64) {
        let lo = u64::from_le_bytes(self.0[..8].try_into().unwrap());
        let hi = u64::from_le_bytes(self.0[8..].try_into().unwrap());
        (lo, hi)
    }
}

impl BitXor for Block128 {
    type Output = Block128;

    #[inline]
    fn bitxor(mut self, rhs: Block128) -> Block128 {
        self ^= rhs;
        self
    }
}

impl BitXorAssign for Block128 {
    #[inline]
    fn bitxor_assign(&mut self, rhs: Block128) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a ^= b;
        }
    }
}

impl fmt::Debug for Block128 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Block128(")?;
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AesError {
    #[error("hardware backend unavailable: this CPU has no AES instructions")]
    HardwareUnavailable,
    #[error("sample count must be at least 1")]
    ZeroSamples,
    #[error("unknown backend {0:?} (expected auto, hardware or software)")]
    UnknownBackend(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendKind {
    Hardware,
    Software,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendKind::Hardware => "hardware",
            BackendKind::Software => "software",
        })
    }
}

/// Requested backend; `Auto` picks hardware when the CPU supports it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BackendPreference {
    #[default]
    Auto,
    Hardware,
    Software,
}

impl FromStr for BackendPreference {
    type Err = AesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(BackendPreference::Auto),
            "hardware" | "hw" => Ok(BackendPreference::Hardware),
            "software" | "sw" => Ok(BackendPreference::Software),
            other => Err(AesError::UnknownBackend(other.to_string())),
        }
    }
}

/// A usable AES round implementation. A `Hardware` backend can only be
/// constructed after the CPU feature check succeeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Backend(BackendKind);

impl Backend {
    pub const fn software() -> Self {
        Backend(BackendKind::Software)
    }

    pub fn hardware() -> Result<Self, AesError> {
        if hardware_available() {
            Ok(Backend(BackendKind::Hardware))
        } else {
            Err(AesError::HardwareUnavailable)
        }
    }

    /// Best backend for this CPU, decided once per process.
    pub fn detect() -> Self {
        static DETECTED: OnceLock<Backend> = OnceLock::new();
        *DETECTED.get_or_init(|| Backend::hardware().unwrap_or(Backend::software()))
    }

    pub fn select(pref: BackendPreference) -> Result<Self, AesError> {
        match pref {
            BackendPreference::Auto => Ok(Backend::detect()),
            BackendPreference::Hardware => Backend::hardware(),
            BackendPreference::Software => Ok(Backend::software()),
        }
    }

    pub fn kind(self) -> BackendKind {
        self.0
    }

    #[inline]
    pub fn aes_round(self, state: Block128, round_key: Block128) -> Block128 {
        match self.0 {
            // SAFETY: a Hardware backend is only constructed when the feature check passed.
            BackendKind::Hardware => unsafe { hw::aes_round(state, round_key) },
            BackendKind::Software => soft::aes_round(state, round_key),
        }
    }
}

pub fn hardware_available() -> bool {
    static AVAILABLE: OnceLock<bool> = OnceLock::new();
    *AVAILABLE.get_or_init(hw::available)
}

/// One AES encryption round (`AESENC` semantics) on the detected backend.
#[inline]
pub fn aes_round(state: Block128, round_key: Block128) -> Block128 {
    Backend::detect().aes_round(state, round_key)
}

const VERIFY_SEED: u64 = 0x05ee_dae5_0b5e_55ed;

/// Compares hardware and software rounds on `sample_count` fixed-seed random
/// (state, key) pairs. `Ok(false)` means a mismatch was found.
pub fn verify_backends(sample_count: usize) -> Result<bool, AesError> {
    if sample_count == 0 {
        return Err(AesError::ZeroSamples);
    }
    let hw = Backend::hardware()?;
    let sw = Backend::software();
    let mut rng = SplitMix64::new(VERIFY_SEED);
    let mut block = || Block128::from_u64s(rng.next_u64(), rng.next_u64());
    for _ in 0..sample_count {
        let (x, k) = (block(), block());
        if hw.aes_round(x, k) != sw.aes_round(x, k) {
            return Ok(false);
        }
    }
    Ok(true)
}
