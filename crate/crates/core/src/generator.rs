//! The random engine: a sponge over the 2048-bit permutation with an XOR
//! feed-forward of the 128-bit inner part (Reverie's `next` function).
//!
//! Bytes 0..16 of the state are the capacity and are never returned. Each
//! refill exposes bytes 16..256, consumed in ascending order; 64-bit and
//! 32-bit draws are little-endian reads at a shared byte cursor.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::aes::Backend;
use crate::permutation::{permute_in_place, KeySchedule, PermutationState, STATE_BYTES};
use crate::source::RandomSource;

/// First output byte of a refilled buffer.
pub const OUTPUT_START: usize = 16;
/// Output bytes per refill.
pub const OUTPUT_BYTES: usize = STATE_BYTES - OUTPUT_START;

/// 256-bit seed. All values, including all-zero, are valid.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Seed {
    pub s0: u64,
    pub s1: u64,
    pub s2: u64,
    pub s3: u64,
}

impl Seed {
    pub const fn new(s0: u64, s1: u64, s2: u64, s3: u64) -> Self {
        Seed { s0, s1, s2, s3 }
    }
}

impl From<[u64; 4]> for Seed {
    fn from([s0, s1, s2, s3]: [u64; 4]) -> Self {
        Seed { s0, s1, s2, s3 }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeedParseError {
    #[error("seed needs exactly four comma-separated values, got {0}")]
    Count(usize),
    #[error("invalid 64-bit seed value {0:?}")]
    Value(String),
}

fn parse_u64(s: &str) -> Result<u64, SeedParseError> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|_| SeedParseError::Value(t.to_string()))
}

/// Parses `a,b,c,d`, each value decimal or `0x`-prefixed hex.
impl FromStr for Seed {
    type Err = SeedParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(SeedParseError::Count(parts.len()));
        }
        let mut v = [0u64; 4];
        for (dst, p) in v.iter_mut().zip(parts) {
            *dst = parse_u64(p)?;
        }
        Ok(Seed::from(v))
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x},{:#x},{:#x},{:#x}", self.s0, self.s1, self.s2, self.s3)
    }
}

/// Seed placement: even branches 2 and 4 (words 4, 5, 8, 9).
pub fn initial_state(seed: Seed) -> PermutationState {
    let mut words = [0u64; 32];
    words[4] = seed.s0;
    words[5] = seed.s1;
    words[8] = seed.s2;
    words[9] = seed.s3;
    PermutationState::from_words(&words)
}

/// The Randen engine. Not `Sync`-shared: one instance per thread, or hand it
/// off with ordinary synchronization.
#[derive(Clone)]
pub struct Randen {
    state: PermutationState,
    cursor: usize,
    keys: Arc<KeySchedule>,
    backend: Backend,
}

impl Randen {
    /// Built-in keys and the best available AES backend.
    pub fn new(seed: Seed) -> Self {
        Randen::with_keys(seed, KeySchedule::builtin_pi(), Backend::detect())
    }

    pub fn with_keys(seed: Seed, keys: Arc<KeySchedule>, backend: Backend) -> Self {
        Randen::from_state(initial_state(seed), keys, backend)
    }

    /// Wraps an arbitrary state. The buffer starts exhausted.
    pub fn from_state(state: PermutationState, keys: Arc<KeySchedule>, backend: Backend) -> Self {
        Randen { state, cursor: STATE_BYTES, keys, backend }
    }

    pub fn state(&self) -> &PermutationState {
        &self.state
    }

    pub fn words(&self) -> [u64; 32] {
        self.state.to_words()
    }

    /// Next unread byte offset, in `16..=256`.
    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn keys(&self) -> &Arc<KeySchedule> {
        &self.keys
    }

    /// Permutes the state and XORs the previous inner 128 bits back in.
    pub fn generate(&mut self) {
        let prev_inner: [u8; OUTPUT_START] = self.state.as_bytes()[..OUTPUT_START].try_into().unwrap();
        permute_in_place(&mut self.state, &self.keys, self.backend);
        for (b, p) in self.state.as_bytes_mut()[..OUTPUT_START].iter_mut().zip(prev_inner) {
            *b ^= p;
        }
        self.cursor = OUTPUT_START;
    }

    /// The 240 output bytes of the current buffer, regardless of the cursor.
    pub fn output_buffer(&self) -> &[u8] {
        &self.state.as_bytes()[OUTPUT_START..]
    }

    #[inline]
    fn take<const N: usize>(&mut self) -> [u8; N] {
        if STATE_BYTES - self.cursor < N {
            self.generate();
        }
        let out = self.state.as_bytes()[self.cursor..self.cursor + N].try_into().unwrap();
        self.cursor += N;
        out
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        u64::from_le_bytes(self.take::<8>())
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        u32::from_le_bytes(self.take::<4>())
    }

    /// Same final state as `n` calls to [`next_u64`](Self::next_u64), without
    /// copying bytes out of intermediate buffers.
    pub fn discard(&mut self, n: u64) {
        const PER_BUFFER: u64 = (OUTPUT_BYTES / 8) as u64;
        let avail = ((STATE_BYTES - self.cursor) / 8) as u64;
        if n <= avail {
            self.cursor += 8 * n as usize;
            return;
        }
        let rest = n - avail;
        let extra_buffers = (rest - 1) / PER_BUFFER;
        for _ in 0..=extra_buffers {
            self.generate();
        }
        self.cursor = OUTPUT_START + 8 * (rest - extra_buffers * PER_BUFFER) as usize;
    }

    /// Copies raw output bytes in stream order, refilling as needed.
    pub fn fill_bytes(&mut self, dest: &mut [u8]) {
        let mut filled = 0;
        while filled < dest.len() {
            if self.cursor == STATE_BYTES {
                self.generate();
            }
            let n = (STATE_BYTES - self.cursor).min(dest.len() - filled);
            dest[filled..filled + n].copy_from_slice(&self.state.as_bytes()[self.cursor..self.cursor + n]);
            self.cursor += n;
            filled += n;
        }
    }
}

impl fmt::Debug for Randen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // State is deliberately not printed.
        f.debug_struct("Randen")
            .field("cursor", &self.cursor)
            .field("backend", &self.backend.kind())
            .finish_non_exhaustive()
    }
}

impl RandomSource for Randen {
    #[inline]
    fn next_u64(&mut self) -> u64 {
        Randen::next_u64(self)
    }
}
