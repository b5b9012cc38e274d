#[cfg(target_arch = "x86")]
use std::arch::x86::*;
#[cfg(target_arch = "x86_64")]
use std::arch::x86_64::*;

use super::{BRANCHES, FUNCTIONS_PER_ROUND, KEY_COUNT, ROUNDS, SHUFFLE, STATE_BYTES};
use crate::aes::Block128;

/// AES-NI version of the permutation. The shuffle only renames registers.
///
/// Caller must ensure the CPU supports AES-NI.
#[target_feature(enable = "aes,sse2")]
pub(super) unsafe fn permute(state: &mut [u8; STATE_BYTES], keys: &[Block128; KEY_COUNT]) {
    unsafe {
        let mut b: [__m128i; BRANCHES] =
            std::array::from_fn(|i| _mm_loadu_si128(state.as_ptr().add(16 * i) as *const __m128i));
        for round in 0..ROUNDS {
            let round_keys = &keys[round * FUNCTIONS_PER_ROUND..(round + 1) * FUNCTIONS_PER_ROUND];
            for (p, key) in round_keys.iter().enumerate() {
                let k = _mm_loadu_si128(key.0.as_ptr() as *const __m128i);
                b[2 * p + 1] = _mm_aesenc_si128(_mm_aesenc_si128(b[2 * p], k), b[2 * p + 1]);
            }
            b = SHUFFLE.map(|i| b[i]);
        }
        for (i, v) in b.iter().enumerate() {
            _mm_storeu_si128(state.as_mut_ptr().add(16 * i) as *mut __m128i, *v);
        }
    }
}
