//! AES round via CPU instructions (AES-NI on x86, the crypto extension on aarch64).

use super::Block128;

#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
pub(crate) fn available() -> bool {
    std::arch::is_x86_feature_detected!("aes") && std::arch::is_x86_feature_detected!("sse2")
}

#[cfg(target_arch = "aarch64")]
pub(crate) fn available() -> bool {
    std::arch::is_aarch64_feature_detected!("aes")
}

#[cfg(not(any(target_arch = "x86", target_arch = "x86_64", target_arch = "aarch64")))]
pub(crate) fn available() -> bool {
    false
}

/// Caller must have checked [`available`].
#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
#[target_feature(enable = "aes,sse2")]
pub(crate) unsafe fn aes_round(state: Block128, round_key: Block128) -> Block128 {
    #[cfg(target_arch = "x86")]
    use std::arch::x86::*;
    #[cfg(target_arch = "x86_64")]
    use std::arch::x86_64::*;

    let mut out = Block128::ZERO;
    unsafe {
        let s = _mm_loadu_si128(state.0.as_ptr() as *const __m128i);
        let k = _mm_loadu_si128(round_key.0.as_ptr() as *const __m128i);
        _mm_storeu_si128(out.0.as_mut_ptr() as *mut __m128i, _mm_aesenc_si128(s, k));
    }
    out
}

/// Caller must have checked [`available`].
///
/// AESE folds AddRoundKey in before SubBytes, so it is fed a zero key and the
/// real key is XORed after AESMC to reproduce AESENC ordering.
#[cfg(target_arch = "aarch64")]
#[target_feature(enable = "aes")]
pub(crate) unsafe fn aes_round(state: Block128, round_key: Block128) -> Block128 {
    use std::arch::aarch64::*;

    let mut out = Block128::ZERO;
    unsafe {
        let s = vld1q_u8(state.0.as_ptr());
        let k = vld1q_u8(round_key.0.as_ptr());
        let r = veorq_u8(vaesmcq_u8(vaeseq_u8(s, vdupq_n_u8(0))), k);
        vst1q_u8(out.0.as_mut_ptr(), r);
    }
    out
}

#[cfg(not(any(target_arch = "x86", target_arch = "x86_64", target_arch = "aarch64")))]
pub(crate) unsafe fn aes_round(_state: Block128, _round_key: Block128) -> Block128 {
    unreachable!("no AES hardware backend on this architecture")
}
