//! Checks against models written independently of the library.

mod common;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use randen::aes::{soft, Backend, Block128};
use randen::permutation::{KeySchedule, KEY_BYTES};
use randen::search::{exact_min_active, fast_min_active, Network, REFERENCE_BOUNDS};

/// `floor(atan(1/x) * 2^bits)`, by the alternating Taylor series.
fn arctan_inv(x: u32, bits: u64) -> BigUint {
    let one = BigUint::one() << bits;
    let x2 = BigUint::from(x) * x;
    let mut power = &one / x;
    let mut positive = BigUint::zero();
    let mut negative = BigUint::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            positive += term;
        } else {
            negative += term;
        }
        power /= &x2;
        k += 1;
    }
    positive - negative
}

/// The first `n` bytes of the binary expansion of pi after the point.
fn pi_fraction_bytes(n: usize) -> Vec<u8> {
    let guard = 64;
    let bits = 8 * n as u64 + guard;
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let pi = arctan_inv(5, bits) * 16u32 - arctan_inv(239, bits) * 4u32;
    let fraction = (pi - (BigUint::from(3u32) << bits)) >> guard;
    let mut bytes = fraction.to_bytes_be();
    while bytes.len() < n {
        bytes.insert(0, 0);
    }
    bytes
}

#[test]
fn builtin_keys_are_pi_digits() {
    let expected = pi_fraction_bytes(KEY_BYTES);
    assert_eq!(&expected[..4], &[0x24, 0x3f, 0x6a, 0x88]);
    assert_eq!(KeySchedule::builtin_pi().to_bytes(), expected);
}

#[test]
fn builtin_keys_match_fixture_ends() {
    let g = common::golden();
    let keys = KeySchedule::builtin_pi().to_bytes();
    assert_eq!(&keys[..32], &g["pi_head"][..]);
    assert_eq!(&keys[KEY_BYTES - 16..], &g["pi_tail"][..]);
}

#[test]
fn software_round_matches_field_model() {
    let sbox = common::oracle_sbox();
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    for _ in 0..2000 {
        let s: [u8; 16] = rng.gen();
        let k: [u8; 16] = rng.gen();
        assert_eq!(soft::aes_round(Block128(s), Block128(k)).0, common::oracle_aes_round(&sbox, s, k));
    }
}

#[test]
fn hardware_round_matches_field_model() {
    let Ok(hw) = Backend::hardware() else { return };
    let sbox = common::oracle_sbox();
    let mut rng = ChaCha20Rng::seed_from_u64(12);
    for _ in 0..2000 {
        let s: [u8; 16] = rng.gen();
        let k: [u8; 16] = rng.gen();
        assert_eq!(hw.aes_round(Block128(s), Block128(k)).0, common::oracle_aes_round(&sbox, s, k));
    }
}

#[test]
fn fixed_aes_vectors() {
    let g = common::golden();
    let seq: [u8; 16] = std::array::from_fn(|i| i as u8);
    let key: [u8; 16] = std::array::from_fn(|i| 0xa0 + i as u8);
    for backend in [Some(Backend::software()), Backend::hardware().ok()].into_iter().flatten() {
        assert_eq!(&backend.aes_round(Block128::ZERO, Block128::ZERO).0[..], &g["aes_zero"][..]);
        assert_eq!(&backend.aes_round(Block128(seq), Block128(key)).0[..], &g["aes_seq"][..]);
    }
}

#[test]
fn exact_bounds_match_dynamic_programming() {
    let net = Network::randen();
    let shuffle = common::interleave_shuffle(net.for_new_odd(), net.for_new_even());
    for r in 1..=16 {
        assert_eq!(exact_min_active(&net, r, 1).unwrap(), common::dp_min_active(&shuffle, r), "rounds {r}");
    }
}

#[test]
fn dynamic_programming_reproduces_reference_table() {
    let net = Network::randen();
    let shuffle = common::interleave_shuffle(net.for_new_odd(), net.for_new_even());
    let got: Vec<u32> = (1..=24).map(|r| common::dp_min_active(&shuffle, r)).collect();
    assert_eq!(got, REFERENCE_BOUNDS);
}

#[test]
fn fast_rule_is_an_upper_bound() {
    let net = Network::randen();
    for r in 1..=14 {
        assert!(exact_min_active(&net, r, 1).unwrap() <= fast_min_active(&net, r).unwrap());
    }
}

#[test]
fn worker_count_does_not_change_bounds() {
    let net = Network::randen();
    for r in 1..=12 {
        assert_eq!(exact_min_active(&net, r, 1).unwrap(), exact_min_active(&net, r, 4).unwrap(), "rounds {r}");
    }
}

#[test]
fn dp_agrees_with_brute_force_on_six_branches() {
    let net = Network::new(vec![1, 2, 0], vec![2, 0, 1]).unwrap();
    let shuffle = common::interleave_shuffle(net.for_new_odd(), net.for_new_even());
    for r in 1..=5 {
        let brute = common::brute_min_active(&shuffle, r);
        assert_eq!(common::dp_min_active(&shuffle, r), brute);
        assert_eq!(exact_min_active(&net, r, 1).unwrap(), brute);
    }
}
