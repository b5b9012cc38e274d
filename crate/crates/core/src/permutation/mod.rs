//! The 2048-bit permutation: 17 rounds of a 16-branch type-2 generalized
//! Feistel network whose round function is two AES rounds, followed by the
//! improved block shuffle.
//!
//! Each round, every even branch `e` feeds `F(e, key) = AES(AES(e, key), 0)`
//! and the result is XORed into its odd neighbour. Because an AES round ends
//! with a key XOR, `F(e, key) ^ o` is computed as `AES(AES(e, key), o)`.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::aes::{Backend, BackendKind, Block128};

mod pi_keys;
#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
mod x86;

pub const BRANCHES: usize = 16;
pub const ROUNDS: usize = 17;
pub const FUNCTIONS_PER_ROUND: usize = BRANCHES / 2;
pub const KEY_COUNT: usize = ROUNDS * FUNCTIONS_PER_ROUND;
pub const KEY_BYTES: usize = KEY_COUNT * 16;
pub const STATE_BYTES: usize = BRANCHES * 16;

/// Output branch `i` of a block shuffle is input branch `SHUFFLE[i]`.
pub const SHUFFLE: [usize; BRANCHES] = [7, 2, 13, 4, 11, 8, 3, 6, 15, 0, 9, 10, 1, 14, 5, 12];

/// Inverse of [`SHUFFLE`]: input branch `j` lands at output `UNSHUFFLE[j]`.
pub const UNSHUFFLE: [usize; BRANCHES] = invert(SHUFFLE);

const fn invert(perm: [usize; BRANCHES]) -> [usize; BRANCHES] {
    let mut inv = [0; BRANCHES];
    let mut i = 0;
    while i < BRANCHES {
        inv[perm[i]] = i;
        i += 1;
    }
    inv
}

pub fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&p| p < seen.len() && !std::mem::replace(&mut seen[p], true))
}

/// 16 branches of 128 bits; branch `b` is bytes `16b..16b+16`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PermutationState {
    bytes: [u8; STATE_BYTES],
}

impl PermutationState {
    pub const fn zero() -> Self {
        PermutationState { bytes: [0; STATE_BYTES] }
    }

    pub const fn from_bytes(bytes: [u8; STATE_BYTES]) -> Self {
        PermutationState { bytes }
    }

    /// 32 little-endian 64-bit words, two per branch.
    pub fn from_words(words: &[u64; 32]) -> Self {
        let mut bytes = [0u8; STATE_BYTES];
        for (chunk, w) in bytes.chunks_exact_mut(8).zip(words) {
            chunk.copy_from_slice(&w.to_le_bytes());
        }
        PermutationState { bytes }
    }

    pub fn from_branches(branches: &[Block128; BRANCHES]) -> Self {
        let mut s = PermutationState::zero();
        for (i, b) in branches.iter().enumerate() {
            s.set_branch(i, *b);
        }
        s
    }

    pub fn as_bytes(&self) -> &[u8; STATE_BYTES] {
        &self.bytes
    }

    pub fn as_bytes_mut(&mut self) -> &mut [u8; STATE_BYTES] {
        &mut self.bytes
    }

    pub fn to_words(&self) -> [u64; 32] {
        std::array::from_fn(|i| self.word(i))
    }

    #[inline]
    pub fn word(&self, i: usize) -> u64 {
        u64::from_le_bytes(self.bytes[8 * i..8 * i + 8].try_into().unwrap())
    }

    #[inline]
    pub fn branch(&self, i: usize) -> Block128 {
        Block128(self.bytes[16 * i..16 * i + 16].try_into().unwrap())
    }

    #[inline]
    pub fn set_branch(&mut self, i: usize, b: Block128) {
        self.bytes[16 * i..16 * i + 16].copy_from_slice(&b.0);
    }

    pub fn branches(&self) -> [Block128; BRANCHES] {
        std::array::from_fn(|i| self.branch(i))
    }
}

impl Default for PermutationState {
    fn default() -> Self {
        PermutationState::zero()
    }
}

impl fmt::Debug for PermutationState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.branches().iter()).finish()
    }
}

#[derive(Debug, Error)]
pub enum KeyError {
    #[error("key material must be exactly {KEY_BYTES} bytes, got {0}")]
    Size(usize),
    #[error("cannot read key file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Where the 136 round keys come from.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum KeySource {
    /// Fractional bits of pi (`0x243F6A88...`).
    #[default]
    BuiltinPi,
    /// A file of exactly 2176 raw bytes, round-major then function-minor.
    File(PathBuf),
}

/// 136 AES round keys; round `r`, function `f` uses `keys[8r + f]`.
#[derive(Clone, PartialEq, Eq)]
pub struct KeySchedule {
    keys: Box<[Block128; KEY_COUNT]>,
}

impl KeySchedule {
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, KeyError> {
        if bytes.len() != KEY_BYTES {
            return Err(KeyError::Size(bytes.len()));
        }
        let mut keys = Box::new([Block128::ZERO; KEY_COUNT]);
        for (k, chunk) in keys.iter_mut().zip(bytes.chunks_exact(16)) {
            k.0.copy_from_slice(chunk);
        }
        Ok(KeySchedule { keys })
    }

    /// Shared instance of the pi-derived schedule.
    pub fn builtin_pi() -> Arc<KeySchedule> {
        static PI: OnceLock<Arc<KeySchedule>> = OnceLock::new();
        PI.get_or_init(|| {
            let ks = KeySchedule::from_bytes(&pi_keys::PI_KEY_BYTES).expect("embedded key size");
            assert!(ks.all_distinct(), "embedded round keys repeat");
            Arc::new(ks)
        })
        .clone()
    }

    pub fn keys(&self) -> &[Block128; KEY_COUNT] {
        &self.keys
    }

    pub fn key(&self, round: usize, function: usize) -> Block128 {
        self.keys[FUNCTIONS_PER_ROUND * round + function]
    }

    pub fn round_keys(&self, round: usize) -> &[Block128; FUNCTIONS_PER_ROUND] {
        let start = FUNCTIONS_PER_ROUND * round;
        self.keys[start..start + FUNCTIONS_PER_ROUND].try_into().unwrap()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.keys.iter().flat_map(|k| k.0).collect()
    }

    pub fn all_distinct(&self) -> bool {
        let mut sorted: Vec<[u8; 16]> = self.keys.iter().map(|k| k.0).collect();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

impl fmt::Debug for KeySchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KeySchedule({:?}, ..)", self.keys[0])
    }
}

pub fn derive_round_keys(source: &KeySource) -> Result<Arc<KeySchedule>, KeyError> {
    match source {
        KeySource::BuiltinPi => Ok(KeySchedule::builtin_pi()),
        KeySource::File(path) => {
            let bytes = fs::read(path).map_err(|source| KeyError::Io { path: path.clone(), source })?;
            KeySchedule::from_bytes(&bytes).map(Arc::new)
        }
    }
}

/// `F(even, key) ^ odd`, written as two chained AES rounds.
#[inline(always)]
fn feistel(backend: Backend, even: Block128, key: Block128, odd: Block128) -> Block128 {
    backend.aes_round(backend.aes_round(even, key), odd)
}

/// First layer of a round: odd branch `2p+1` absorbs `F(branch 2p, keys[p])`.
pub fn round_functions(
    state: &PermutationState,
    round_keys: &[Block128; FUNCTIONS_PER_ROUND],
    backend: Backend,
) -> PermutationState {
    let mut out = state.clone();
    for (p, &key) in round_keys.iter().enumerate() {
        let odd = feistel(backend, state.branch(2 * p), key, state.branch(2 * p + 1));
        out.set_branch(2 * p + 1, odd);
    }
    out
}

pub fn block_shuffle(state: &PermutationState) -> PermutationState {
    let mut out = PermutationState::zero();
    for (i, &src) in SHUFFLE.iter().enumerate() {
        out.set_branch(i, state.branch(src));
    }
    out
}

fn block_unshuffle(state: &PermutationState) -> PermutationState {
    let mut out = PermutationState::zero();
    for (i, &src) in SHUFFLE.iter().enumerate() {
        out.set_branch(src, state.branch(i));
    }
    out
}

fn permute_generic(state: &mut PermutationState, schedule: &KeySchedule, backend: Backend) {
    let mut branches = state.branches();
    for round in 0..ROUNDS {
        for (p, &key) in schedule.round_keys(round).iter().enumerate() {
            branches[2 * p + 1] = feistel(backend, branches[2 * p], key, branches[2 * p + 1]);
        }
        branches = SHUFFLE.map(|i| branches[i]);
    }
    *state = PermutationState::from_branches(&branches);
}

/// Applies the permutation in place.
pub fn permute_in_place(state: &mut PermutationState, schedule: &KeySchedule, backend: Backend) {
    match backend.kind() {
        #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
        // SAFETY: Hardware backends exist only after the AES feature check.
        BackendKind::Hardware => unsafe { x86::permute(&mut state.bytes, schedule.keys()) },
        _ => permute_generic(state, schedule, backend),
    }
}

pub fn permute(state: &PermutationState, schedule: &KeySchedule, backend: Backend) -> PermutationState {
    let mut out = state.clone();
    permute_in_place(&mut out, schedule, backend);
    out
}

/// Exact inverse of [`permute`]. Only needs the forward round function:
/// undo the shuffle, then XOR the same `F(even, key)` back out of each odd branch.
pub fn inverse_permute(
    state: &PermutationState,
    schedule: &KeySchedule,
    backend: Backend,
) -> PermutationState {
    let mut s = state.clone();
    for round in (0..ROUNDS).rev() {
        s = block_unshuffle(&s);
        // round_functions is an involution for a fixed key set.
        s = round_functions(&s, schedule.round_keys(round), backend);
    }
    s
}
