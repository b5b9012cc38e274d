//! Shared helpers: fixture loading and small independent models used as
//! oracles. Nothing here calls into the optimized code paths.

#![allow(dead_code)]

use std::collections::HashMap;

const GOLDEN: &str = include_str!("../fixtures/golden.txt");

pub fn golden() -> HashMap<&'static str, Vec<u8>> {
    GOLDEN
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (name, hex) = l.split_once(' ').expect("name hex");
            (name, decode_hex(hex.trim()))
        })
        .collect()
}

pub fn decode_hex(s: &str) -> Vec<u8> {
    (0..s.len()).step_by(2).map(|i| u8::from_str_radix(&s[i..i + 2], 16).unwrap()).collect()
}

fn gf_mul(mut a: u8, mut b: u8) -> u8 {
    let mut r = 0;
    while b != 0 {
        if b & 1 != 0 {
            r ^= a;
        }
        let carry = a & 0x80 != 0;
        a <<= 1;
        if carry {
            a ^= 0x1b;
        }
        b >>= 1;
    }
    r
}

fn gf_inv(a: u8) -> u8 {
    // a^254
    let mut r = 1;
    for _ in 0..254 {
        r = gf_mul(r, a);
    }
    if a == 0 {
        0
    } else {
        r
    }
}

pub fn oracle_sbox() -> [u8; 256] {
    std::array::from_fn(|x| {
        let x = gf_inv(x as u8);
        let mut r = 0x63u8;
        for i in 0..8 {
            let bit = [0, 4, 5, 6, 7].iter().fold(0, |acc, s| acc ^ ((x >> ((i + s) % 8)) & 1));
            r ^= bit << i;
        }
        r
    })
}

/// SubBytes, ShiftRows, MixColumns, AddRoundKey on a column-major block.
pub fn oracle_aes_round(sbox: &[u8; 256], block: [u8; 16], key: [u8; 16]) -> [u8; 16] {
    let s: Vec<u8> = block.iter().map(|&b| sbox[b as usize]).collect();
    let mut shifted = [0u8; 16];
    for c in 0..4 {
        for r in 0..4 {
            shifted[4 * c + r] = s[4 * ((c + r) % 4) + r];
        }
    }
    let mut out = [0u8; 16];
    for c in 0..4 {
        let col = &shifted[4 * c..4 * c + 4];
        for r in 0..4 {
            out[4 * c + r] = gf_mul(2, col[r]) ^ gf_mul(3, col[(r + 1) % 4]) ^ col[(r + 2) % 4] ^ col[(r + 3) % 4];
        }
    }
    for i in 0..16 {
        out[i] ^= key[i];
    }
    out
}

/// Minimum active round functions over `rounds`, by dynamic programming over
/// every branch-activity pattern. Branch `b` is bit `b`; the shuffle is given
/// per output branch as `dest[i] = src[shuffle[i]]`.
pub fn dp_min_active(shuffle: &[usize], rounds: usize) -> u32 {
    let n = shuffle.len();
    let states = 1usize << n;
    let mut best = vec![0; states];
    best[0] = u32::MAX;
    let mut total = u32::MAX;
    for round in 0..rounds {
        let mut next = vec![u32::MAX; states];
        for (s, &cost) in best.iter().enumerate() {
            if cost == u32::MAX {
                continue;
            }
            let pairs = n / 2;
            let active = (0..pairs).filter(|p| s >> (2 * p) & 1 == 1).count() as u32;
            let cost = cost + active;
            if round + 1 == rounds {
                total = total.min(cost);
                continue;
            }
            // Expand every cancellation choice for pairs with both inputs active.
            let forks: Vec<usize> = (0..pairs).filter(|p| s >> (2 * p) & 3 == 3).collect();
            for choice in 0..1usize << forks.len() {
                let mut t = s;
                for p in 0..pairs {
                    let even = s >> (2 * p) & 1;
                    let odd = s >> (2 * p + 1) & 1;
                    let new_odd = match (even, odd) {
                        (1, 1) => {
                            let k = forks.iter().position(|&f| f == p).unwrap();
                            (choice >> k) & 1
                        }
                        (e, o) => e ^ o,
                    };
                    t = (t & !(1 << (2 * p + 1))) | (new_odd << (2 * p + 1));
                }
                let mut u = 0;
                for (i, &src) in shuffle.iter().enumerate() {
                    u |= ((t >> src) & 1) << i;
                }
                next[u] = next[u].min(cost);
            }
        }
        best = next;
    }
    total
}

/// Full branch shuffle equivalent to a half-width description.
pub fn interleave_shuffle(for_new_odd: &[u8], for_new_even: &[u8]) -> Vec<usize> {
    let w = for_new_odd.len();
    let mut shuffle = vec![0; 2 * w];
    for i in 0..w {
        shuffle[2 * i + 1] = 2 * for_new_odd[i] as usize;
        shuffle[2 * i] = 2 * for_new_even[i] as usize + 1;
    }
    shuffle
}

/// Plain recursion over all cancellation outcomes, no pruning at all.
pub fn brute_min_active(shuffle: &[usize], rounds: usize) -> u32 {
    fn go(shuffle: &[usize], state: &[bool], rounds_left: usize) -> u32 {
        if rounds_left == 0 {
            return 0;
        }
        let pairs = state.len() / 2;
        let active = (0..pairs).filter(|&p| state[2 * p]).count() as u32;
        let mut options: Vec<Vec<bool>> = vec![state.to_vec()];
        for p in 0..pairs {
            let (e, o) = (state[2 * p], state[2 * p + 1]);
            let mut grown = Vec::new();
            for s in options {
                if e && o {
                    for v in [false, true] {
                        let mut s2 = s.clone();
                        s2[2 * p + 1] = v;
                        grown.push(s2);
                    }
                } else {
                    let mut s2 = s;
                    s2[2 * p + 1] = e ^ o;
                    grown.push(s2);
                }
            }
            options = grown;
        }
        options
            .iter()
            .map(|s| {
                let shuffled: Vec<bool> = shuffle.iter().map(|&src| s[src]).collect();
                active + go(shuffle, &shuffled, rounds_left - 1)
            })
            .min()
            .unwrap()
    }
    let n = shuffle.len();
    (1u32..1 << n)
        .map(|bits| {
            let state: Vec<bool> = (0..n).map(|b| bits >> b & 1 == 1).collect();
            go(shuffle, &state, rounds)
        })
        .min()
        .unwrap()
}
