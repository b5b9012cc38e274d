//! Property-based invariants and statistical checks of the public API.

use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use randen::aes::{soft, Backend, Block128};
use randen::distributions::{fisher_yates, reservoir_sample_slice, unit_double, uniform_below, DistributionError};
use randen::permutation::{inverse_permute, permute, KeySchedule, PermutationState, STATE_BYTES};
use randen::{Randen, Seed};

fn seed_strategy() -> impl Strategy<Value = Seed> {
    any::<[u64; 4]>().prop_map(Seed::from)
}

fn state_strategy() -> impl Strategy<Value = PermutationState> {
    proptest::collection::vec(any::<u8>(), STATE_BYTES)
        .prop_map(|v| PermutationState::from_bytes(v.try_into().unwrap()))
}

fn chi_square_p(counts: &[u64], expected: f64) -> f64 {
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    ChiSquared::new((counts.len() - 1) as f64).unwrap().sf(stat)
}

proptest! {
    #[test]
    fn round_key_enters_linearly(s in any::<[u8; 16]>(), k1 in any::<[u8; 16]>(), k2 in any::<[u8; 16]>()) {
        let (s, k1, k2) = (Block128(s), Block128(k1), Block128(k2));
        prop_assert_eq!(soft::aes_round(s, k1) ^ soft::aes_round(s, k2), k1 ^ k2);
    }

    #[test]
    fn backends_agree_on_rounds(s in any::<[u8; 16]>(), k in any::<[u8; 16]>()) {
        if let Ok(hw) = Backend::hardware() {
            prop_assert_eq!(hw.aes_round(Block128(s), Block128(k)), soft::aes_round(Block128(s), Block128(k)));
        }
    }

    #[test]
    fn inverse_undoes_permute(state in state_strategy()) {
        let keys = KeySchedule::builtin_pi();
        let backend = Backend::detect();
        prop_assert_eq!(inverse_permute(&permute(&state, &keys, backend), &keys, backend), state);
    }

    #[test]
    fn uniform_below_stays_in_range(seed in seed_strategy(), bound in 1u64..) {
        let mut rng = Randen::new(seed);
        for _ in 0..64 {
            prop_assert!(uniform_below(&mut rng, bound).unwrap() < bound);
        }
    }

    #[test]
    fn shuffle_is_a_permutation(seed in seed_strategy(), len in 0usize..300) {
        let mut rng = Randen::new(seed);
        let mut items: Vec<usize> = (0..len).collect();
        fisher_yates(&mut rng, &mut items);
        items.sort_unstable();
        prop_assert!(items.iter().enumerate().all(|(i, &v)| i == v));
    }

    #[test]
    fn word_and_byte_streams_agree(seed in seed_strategy(), words in 1usize..100) {
        let mut a = Randen::new(seed);
        let mut b = Randen::new(seed);
        let mut bytes = vec![0u8; 8 * words];
        b.fill_bytes(&mut bytes);
        for chunk in bytes.chunks(8) {
            prop_assert_eq!(a.next_u64(), u64::from_le_bytes(chunk.try_into().unwrap()));
        }
    }

    #[test]
    fn half_words_share_the_cursor(seed in seed_strategy(), words in 1usize..100) {
        let mut a = Randen::new(seed);
        let mut b = Randen::new(seed);
        for _ in 0..words {
            let lo = b.next_u32() as u64;
            let hi = b.next_u32() as u64;
            prop_assert_eq!(a.next_u64(), lo | hi << 32);
        }
    }

    #[test]
    fn discard_matches_drawing(seed in seed_strategy(), prefix in 0u64..3, n in 0u64..2000) {
        let mut a = Randen::new(seed);
        let mut b = Randen::new(seed);
        for _ in 0..prefix {
            a.next_u64();
            b.next_u64();
        }
        a.discard(n);
        for _ in 0..n {
            b.next_u64();
        }
        prop_assert_eq!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn distinct_seeds_give_distinct_buffers(s in seed_strategy(), t in seed_strategy()) {
        prop_assume!(s != t);
        let (mut a, mut b) = (Randen::new(s), Randen::new(t));
        a.generate();
        b.generate();
        prop_assert_ne!(a.output_buffer(), b.output_buffer());
    }
}

#[test]
fn permutation_is_injective_on_a_sample() {
    let keys = KeySchedule::builtin_pi();
    let backend = Backend::detect();
    let mut seen = std::collections::HashSet::new();
    for i in 0..100_000u64 {
        let mut words = [0u64; 32];
        words[4] = i;
        let out = permute(&PermutationState::from_words(&words), &keys, backend);
        assert!(seen.insert(out.to_words()), "collision at input {i}");
    }
}

#[test]
fn discard_a_million() {
    let seed = Seed::new(9, 8, 7, 6);
    let mut a = Randen::new(seed);
    let mut b = Randen::new(seed);
    a.discard(1_000_000);
    for _ in 0..1_000_000 {
        b.next_u64();
    }
    assert_eq!(a.next_u64(), b.next_u64());
}

#[test]
fn shuffle_trace_from_first_buffer() {
    // Draws from seed (1,2,3,4) swap positions 3<->2, 2<->0, 1<->0.
    let mut rng = Randen::new(Seed::new(1, 2, 3, 4));
    let mut items = [0, 1, 2, 3];
    fisher_yates(&mut rng, &mut items);
    assert_eq!(items, [1, 3, 0, 2]);
}

#[test]
fn reservoir_trace_from_first_buffer() {
    let mut rng = Randen::new(Seed::new(1, 2, 3, 4));
    assert_eq!(reservoir_sample_slice(&mut rng, &[0, 1, 2, 3, 4], 2).unwrap(), vec![4, 2]);
    assert_eq!(
        reservoir_sample_slice(&mut rng, &[0, 1], 3),
        Err(DistributionError::ReservoirTooLarge { k: 3, n: 2 })
    );
}

#[test]
fn die_rolls_are_balanced() {
    const DRAWS: u64 = 1_000_000;
    let mut rng = Randen::new(Seed::new(1, 2, 3, 4));
    let mut counts = [0u64; 6];
    for _ in 0..DRAWS {
        counts[uniform_below(&mut rng, 6).unwrap() as usize] += 1;
    }
    let p = 1.0 / 6.0;
    let sigma = (DRAWS as f64 * p * (1.0 - p)).sqrt();
    for c in counts {
        assert!((c as f64 - DRAWS as f64 * p).abs() < 5.0 * sigma, "{counts:?}");
    }
}

#[test]
fn unit_doubles_average_one_half() {
    let mut rng = Randen::new(Seed::new(5, 6, 7, 8));
    let n = 1_000_000;
    let sum: f64 = (0..n).map(|_| unit_double(rng.next_u64())).sum();
    assert!((sum / n as f64 - 0.5).abs() < 0.002);
    assert_eq!(unit_double(u64::MAX), 1.0 - f64::EPSILON / 2.0);
    assert_eq!(unit_double(0), 0.0);
}

#[test]
fn shuffles_of_four_are_uniform() {
    const TRIALS: u64 = 240_000;
    let mut rng = Randen::new(Seed::new(1, 1, 2, 3));
    let mut counts = std::collections::HashMap::new();
    for _ in 0..TRIALS {
        let mut items = [0u8, 1, 2, 3];
        fisher_yates(&mut rng, &mut items);
        *counts.entry(items).or_insert(0u64) += 1;
    }
    assert_eq!(counts.len(), 24);
    let counts: Vec<u64> = counts.into_values().collect();
    let p = chi_square_p(&counts, TRIALS as f64 / 24.0);
    assert!(p > 1e-6, "p = {p}");
}

#[test]
fn reservoir_inclusion_is_uniform() {
    const TRIALS: u64 = 100_000;
    let mut rng = Randen::new(Seed::new(2, 7, 1, 8));
    for (n, k) in [(5usize, 2usize), (8, 3), (3, 1)] {
        let stream: Vec<usize> = (0..n).collect();
        let mut hits = vec![0u64; n];
        for _ in 0..TRIALS {
            for i in reservoir_sample_slice(&mut rng, &stream, k).unwrap() {
                hits[i] += 1;
            }
        }
        let p = k as f64 / n as f64;
        let sigma = (TRIALS as f64 * p * (1.0 - p)).sqrt();
        for &h in &hits {
            assert!((h as f64 - TRIALS as f64 * p).abs() < 5.0 * sigma, "n={n} k={k} {hits:?}");
        }
    }
}
