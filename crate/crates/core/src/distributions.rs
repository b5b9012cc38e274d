//! Maps raw 64-bit draws onto the quantities the benchmarks consume.
//!
//! Bounded integers use the multiply-shift reduction (high half of the 128-bit
//! product) without rejection, so values carry a bias of at most
//! `bound / 2^64`. This matches the division-free mapping the benchmarks are
//! meant to measure; it is not a substitute for an unbiased sampler.

use thiserror::Error;

use crate::source::RandomSource;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DistributionError {
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("reservoir size {k} exceeds stream length {n}")]
    ReservoirTooLarge { k: usize, n: usize },
    #[error("sample count must be at least 1")]
    NoSamples,
}

/// `floor(r * bound / 2^64)`.
#[inline]
pub fn multiply_shift(r: u64, bound: u64) -> u64 {
    ((r as u128 * bound as u128) >> 64) as u64
}

/// Uniform-ish integer in `[0, bound)` from one 64-bit draw.
#[inline]
pub fn uniform_below<R: RandomSource + ?Sized>(rng: &mut R, bound: u64) -> Result<u64, DistributionError> {
    if bound == 0 {
        return Err(DistributionError::ZeroBound);
    }
    Ok(multiply_shift(rng.next_u64(), bound))
}

/// `(r >> 11) * 2^-53`, i.e. the top 53 bits as a fraction in `[0, 1)`.
#[inline]
pub fn unit_double(r: u64) -> f64 {
    (r >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Shuffles high-to-low, swapping `i` with `uniform_below(i + 1)`.
/// Consumes `len - 1` draws (none for `len <= 1`).
pub fn fisher_yates<T, R: RandomSource + ?Sized>(rng: &mut R, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = multiply_shift(rng.next_u64(), i as u64 + 1) as usize;
        items.swap(i, j);
    }
}

/// Algorithm R. The first `k` items fill the reservoir; item `i >= k` draws
/// `j = uniform_below(i + 1)` and replaces slot `j` when `j < k`.
pub fn reservoir_sample<T, I, R>(rng: &mut R, stream: I, k: usize) -> Result<Vec<T>, DistributionError>
where
    I: IntoIterator<Item = T>,
    R: RandomSource + ?Sized,
{
    let mut reservoir = Vec::with_capacity(k);
    let mut n = 0;
    for (i, item) in stream.into_iter().enumerate() {
        n = i + 1;
        if i < k {
            reservoir.push(item);
            continue;
        }
        let j = multiply_shift(rng.next_u64(), i as u64 + 1) as usize;
        if j < k {
            reservoir[j] = item;
        }
    }
    if n < k {
        return Err(DistributionError::ReservoirTooLarge { k, n });
    }
    Ok(reservoir)
}

/// Reservoir sampling over a slice, rejecting `k > len` before drawing.
pub fn reservoir_sample_slice<T: Clone, R: RandomSource + ?Sized>(
    rng: &mut R,
    stream: &[T],
    k: usize,
) -> Result<Vec<T>, DistributionError> {
    if k > stream.len() {
        return Err(DistributionError::ReservoirTooLarge { k, n: stream.len() });
    }
    reservoir_sample(rng, stream.iter().cloned(), k)
}

/// Estimates pi from `n` points in the unit square (two draws per point).
pub fn monte_carlo_pi<R: RandomSource + ?Sized>(rng: &mut R, n: u64) -> Result<f64, DistributionError> {
    if n == 0 {
        return Err(DistributionError::NoSamples);
    }
    let mut inside = 0u64;
    for _ in 0..n {
        let x = unit_double(rng.next_u64());
        let y = unit_double(rng.next_u64());
        inside += (x * x + y * y <= 1.0) as u64;
    }
    Ok(4.0 * inside as f64 / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::SplitMix64;

    /// Replays a fixed list of draws.
    struct Fixed(Vec<u64>, usize);

    impl RandomSource for Fixed {
        fn next_u64(&mut self) -> u64 {
            let v = self.0[self.1 % self.0.len()];
            self.1 += 1;
            v
        }
    }

    #[test]
    fn zero_draw_maps_to_zero() {
        for bound in [1, 2, 10, u64::MAX] {
            assert_eq!(uniform_below(&mut Fixed(vec![0], 0), bound), Ok(0));
        }
    }

    #[test]
    fn max_draw_maps_to_top() {
        assert_eq!(uniform_below(&mut Fixed(vec![u64::MAX], 0), 10), Ok(9));
        assert_eq!(multiply_shift(u64::MAX, u64::MAX), u64::MAX - 1);
        assert_eq!(multiply_shift(1 << 63, 10), 5);
    }

    #[test]
    fn zero_bound_is_rejected() {
        assert_eq!(uniform_below(&mut SplitMix64::new(1), 0), Err(DistributionError::ZeroBound));
    }

    #[test]
    fn bounded_values_stay_below_bound() {
        let mut rng = SplitMix64::new(7);
        for bound in 1..=1024u64 {
            for _ in 0..100 {
                assert!(uniform_below(&mut rng, bound).unwrap() < bound);
            }
        }
    }

    #[test]
    fn unit_double_edges() {
        assert_eq!(unit_double(0), 0.0);
        assert_eq!(unit_double((1 << 11) - 1), 0.0);
        assert_eq!(unit_double(1 << 11), 1.0 / (1u64 << 53) as f64);
        let top = unit_double(u64::MAX);
        assert_eq!(top, ((1u64 << 53) - 1) as f64 / (1u64 << 53) as f64);
        assert!(top < 1.0);
    }

    #[test]
    fn shuffle_small_inputs() {
        let mut rng = Fixed(vec![u64::MAX], 0);
        let mut empty: [u32; 0] = [];
        fisher_yates(&mut rng, &mut empty);
        let mut one = [42];
        fisher_yates(&mut rng, &mut one);
        assert_eq!(one, [42]);
        assert_eq!(rng.1, 0);
    }

    #[test]
    fn shuffle_uses_high_to_low_swaps() {
        // Draws map to j = 0 (i=3), j = 2 (i=2), j = 1 (i=1).
        let mut rng = Fixed(vec![0, u64::MAX, u64::MAX], 0);
        let mut v = [0, 1, 2, 3];
        fisher_yates(&mut rng, &mut v);
        // swap(3,0) -> [3,1,2,0]; swap(2,2); swap(1,1)
        assert_eq!(v, [3, 1, 2, 0]);
        assert_eq!(rng.1, 3);
    }

    #[test]
    fn reservoir_edge_cases() {
        let mut rng = SplitMix64::new(3);
        let data: Vec<u64> = (0..10).collect();
        assert_eq!(reservoir_sample_slice(&mut rng, &data, 10).unwrap(), data);

        let mut counting = Fixed(vec![5], 0);
        assert!(reservoir_sample_slice(&mut counting, &data, 0).unwrap().is_empty());
        assert_eq!(counting.1, 10);

        assert_eq!(
            reservoir_sample_slice(&mut rng, &data, 11),
            Err(DistributionError::ReservoirTooLarge { k: 11, n: 10 })
        );
        assert_eq!(
            reservoir_sample(&mut rng, 0..3u64, 4),
            Err(DistributionError::ReservoirTooLarge { k: 4, n: 3 })
        );
    }

    #[test]
    fn monte_carlo_forced_origin() {
        assert_eq!(monte_carlo_pi(&mut Fixed(vec![0], 0), 1), Ok(4.0));
        assert_eq!(monte_carlo_pi(&mut Fixed(vec![u64::MAX], 0), 1), Ok(0.0));
        assert_eq!(monte_carlo_pi(&mut Fixed(vec![0], 0), 0), Err(DistributionError::NoSamples));
    }
}
