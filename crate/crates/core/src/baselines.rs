//! Non-cryptographic reference generators used as benchmark baselines and for
//! fixed-seed test input generation.

use crate::source::RandomSource;

/// SplitMix64 (Steele, Lea, Flood). Tiny state, very fast.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub const fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }
}

impl RandomSource for SplitMix64 {
    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

const MT_N: usize = 312;
const MT_M: usize = 156;
const MT_MATRIX_A: u64 = 0xb502_6f5a_a966_19e9;
const MT_UPPER: u64 = 0xffff_ffff_8000_0000;
const MT_LOWER: u64 = 0x0000_0000_7fff_ffff;

/// 64-bit Mersenne Twister, as specified for C++11 `std::mt19937_64`.
#[derive(Clone)]
pub struct Mt19937_64 {
    mt: Box<[u64; MT_N]>,
    index: usize,
}

impl Mt19937_64 {
    pub const DEFAULT_SEED: u64 = 5489;

    pub fn new(seed: u64) -> Self {
        let mut mt = Box::new([0u64; MT_N]);
        mt[0] = seed;
        for i in 1..MT_N {
            mt[i] = 6_364_136_223_846_793_005u64
                .wrapping_mul(mt[i - 1] ^ (mt[i - 1] >> 62))
                .wrapping_add(i as u64);
        }
        Mt19937_64 { mt, index: MT_N }
    }

    fn twist(&mut self) {
        let mt = &mut self.mt;
        for i in 0..MT_N {
            let x = (mt[i] & MT_UPPER) | (mt[(i + 1) % MT_N] & MT_LOWER);
            let mut xa = x >> 1;
            if x & 1 != 0 {
                xa ^= MT_MATRIX_A;
            }
            mt[i] = mt[(i + MT_M) % MT_N] ^ xa;
        }
        self.index = 0;
    }
}

impl RandomSource for Mt19937_64 {
    #[inline]
    fn next_u64(&mut self) -> u64 {
        if self.index >= MT_N {
            self.twist();
        }
        let mut x = self.mt[self.index];
        self.index += 1;
        x ^= (x >> 29) & 0x5555_5555_5555_5555;
        x ^= (x << 17) & 0x71d6_7fff_eda6_0000;
        x ^= (x << 37) & 0xfff7_eee0_0000_0000;
        x ^ (x >> 43)
    }
}
