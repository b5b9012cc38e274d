//! Randen: a fast, backtracking-resistant random generator.
//!
//! The engine is a sponge over a 2048-bit permutation built from 17 rounds of
//! a 16-branch generalized Feistel network with two-round-AES round functions.
//! After every permutation the previous 128-bit inner state is XORed back in,
//! so a leaked state does not reveal earlier output.
//!
//! ```
//! use randen::{Randen, Seed};
//!
//! let mut rng = Randen::new(Seed::new(1, 2, 3, 4));
//! let x = rng.next_u64();
//! let die = randen::distributions::uniform_below(&mut rng, 6).unwrap();
//! assert!(die < 6);
//! # let _ = x;
//! ```
//!
//! Not intended for key generation: there is no reseeding from an entropy
//! source, and the software AES fallback is not constant-time.

pub mod aes;
pub mod baselines;
pub mod bench;
pub mod cli;
pub mod distributions;
pub mod generator;
pub mod golden;
pub mod permutation;
pub mod search;
pub mod smoke;
pub mod source;

pub use aes::{Backend, BackendKind, Block128};
pub use generator::{Randen, Seed};
pub use permutation::{KeySchedule, KeySource, PermutationState};
pub use source::RandomSource;
