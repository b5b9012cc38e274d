//! Lower bounds on differentially active round functions in a type-2
//! generalized Feistel network with SPSP round functions.
//!
//! Each branch is tracked only as active/inactive. For a pair `(even, odd)`
//! the new odd branch is `F(even) ^ odd`: it is inactive when both inputs are
//! inactive and active when exactly one is. When both are active the
//! difference may or may not cancel. The fast rule always assumes
//! cancellation; the exact search explores both outcomes.
//!
//! Even and odd activity are kept as separate 8-bit masks so the XOR step is a
//! single byte XOR and each half-shuffle is a 256-entry table lookup.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

mod exact;

pub use exact::{exact_min_active, ExactSearch, SearchOutcome};

/// Published lower bounds for rounds 1..=24 of the 16-branch network.
pub const REFERENCE_BOUNDS: [u32; 24] = [
    0, 1, 2, 3, 4, 6, 8, 11, 14, 18, 22, 24, 27, 30, 32, 35, 36, 39, 41, 44, 45, 48, 50, 53,
];

pub const MAX_ROUNDS: usize = 24;

/// Index maps for the 16-branch improved shuffle, in half-width form.
pub const RANDEN_FOR_NEW_ODD: [u8; 8] = [3, 6, 5, 1, 7, 4, 0, 2];
pub const RANDEN_FOR_NEW_EVEN: [u8; 8] = [1, 2, 4, 3, 0, 5, 7, 6];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("rounds must be in 1..={MAX_ROUNDS}, got {0}")]
    Rounds(usize),
    #[error("worker count must be at least 1")]
    ZeroWorkers,
    #[error("invalid half-shuffle: {0}")]
    Shuffle(&'static str),
}

/// Branch-activity bits: bit `i` of `even` is branch `2i`, bit `i` of `odd`
/// is branch `2i + 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ActivityMasks {
    pub even: u8,
    pub odd: u8,
}

impl ActivityMasks {
    /// Splits an interleaved branch mask (bit `b` = branch `b`).
    pub fn from_interleaved(bits: u16, width: usize) -> Self {
        let mut m = ActivityMasks::default();
        for i in 0..width {
            m.even |= (((bits >> (2 * i)) & 1) as u8) << i;
            m.odd |= (((bits >> (2 * i + 1)) & 1) as u8) << i;
        }
        m
    }
}

/// A resumable point in the exact search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchNode {
    pub round: u8,
    pub masks: ActivityMasks,
    pub active: u16,
}

/// Activity after the XOR with `F(even)`; the both-active case assumes the
/// differences cancel, which can only overestimate the true minimum.
#[inline]
pub fn xor_result(even_active: bool, xor_active: bool) -> bool {
    even_active != xor_active
}

/// Half-width description of a type-2 network's block shuffle:
/// `new_odd[i] = even[for_new_odd[i]]` and
/// `new_even[i] = f_out[for_new_even[i]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    for_new_odd: Vec<u8>,
    for_new_even: Vec<u8>,
}

impl Network {
    pub fn new(for_new_odd: Vec<u8>, for_new_even: Vec<u8>) -> Result<Self, SearchError> {
        if for_new_odd.len() != for_new_even.len() {
            return Err(SearchError::Shuffle("half-shuffles differ in width"));
        }
        if for_new_odd.is_empty() || for_new_odd.len() > 8 {
            return Err(SearchError::Shuffle("width must be 1..=8"));
        }
        let is_perm = |v: &[u8]| {
            let idx: Vec<usize> = v.iter().map(|&x| x as usize).collect();
            crate::permutation::is_permutation(&idx)
        };
        if !is_perm(&for_new_odd) || !is_perm(&for_new_even) {
            return Err(SearchError::Shuffle("not a permutation"));
        }
        Ok(Network { for_new_odd, for_new_even })
    }

    /// The production 16-branch network.
    pub fn randen() -> Self {
        Network::new(RANDEN_FOR_NEW_ODD.to_vec(), RANDEN_FOR_NEW_EVEN.to_vec()).unwrap()
    }

    /// Number of even (= odd) branches.
    pub fn width(&self) -> usize {
        self.for_new_odd.len()
    }

    pub fn branches(&self) -> usize {
        2 * self.width()
    }

    pub fn for_new_odd(&self) -> &[u8] {
        &self.for_new_odd
    }

    pub fn for_new_even(&self) -> &[u8] {
        &self.for_new_even
    }

    pub(crate) fn tables(&self) -> ShuffleTables {
        let gather = |map: &[u8]| -> [u8; 256] {
            std::array::from_fn(|mask| {
                map.iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, &src)| acc | ((((mask >> src) & 1) as u8) << i))
            })
        };
        ShuffleTables {
            odd: gather(&self.for_new_odd),
            even: gather(&self.for_new_even),
            width: self.width(),
        }
    }
}

/// Mask lookup tables for one network.
pub(crate) struct ShuffleTables {
    pub odd: [u8; 256],
    pub even: [u8; 256],
    pub width: usize,
}

impl ShuffleTables {
    /// One round under the fast (always-cancel) rule.
    #[inline]
    pub fn fast_step(&self, m: ActivityMasks) -> ActivityMasks {
        ActivityMasks { even: self.even[(m.even ^ m.odd) as usize], odd: self.odd[m.even as usize] }
    }

    pub fn initial_masks(&self) -> impl Iterator<Item = ActivityMasks> + '_ {
        (1u32..1 << (2 * self.width)).map(|bits| ActivityMasks::from_interleaved(bits as u16, self.width))
    }
}

fn check_rounds(rounds: usize) -> Result<(), SearchError> {
    if rounds == 0 || rounds > MAX_ROUNDS {
        return Err(SearchError::Rounds(rounds));
    }
    Ok(())
}

/// Minimum active functions over all nonzero inputs under the fast rule.
pub fn fast_min_active(network: &Network, rounds: usize) -> Result<u32, SearchError> {
    check_rounds(rounds)?;
    let tables = network.tables();
    let min = tables
        .initial_masks()
        .map(|mut m| {
            let mut active = 0;
            for _ in 0..rounds {
                active += m.even.count_ones();
                m = tables.fast_step(m);
            }
            active
        })
        .min()
        .unwrap_or(0);
    Ok(min)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub rounds: usize,
    pub bound: u32,
    pub expected: Option<u32>,
}

impl BoundRow {
    pub fn matches(&self) -> bool {
        self.expected.is_none_or(|e| e == self.bound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub rows: Vec<BoundRow>,
}

impl BoundTable {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(BoundRow::matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|r| !r.matches())
    }
}

impl fmt::Display for BoundTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>6}  {:>6}  {:>8}", "rounds", "bound", "expected")?;
        for row in &self.rows {
            let expected = row.expected.map_or("-".to_string(), |e| e.to_string());
            let flag = if row.matches() { "" } else { "  MISMATCH" };
            writeln!(f, "{:>6}  {:>6}  {:>8}{flag}", row.rounds, row.bound, expected)?;
        }
        Ok(())
    }
}

/// Exact bounds for 1..=max_rounds, each compared with [`REFERENCE_BOUNDS`].
pub fn emit_bound_table(network: &Network, max_rounds: usize, workers: usize) -> Result<BoundTable, SearchError> {
    check_rounds(max_rounds)?;
    let rows = (1..=max_rounds)
        .map(|r| {
            Ok(BoundRow {
                rounds: r,
                bound: exact_min_active(network, r, workers)?,
                expected: REFERENCE_BOUNDS.get(r - 1).copied(),
            })
        })
        .collect::<Result<Vec<_>, SearchError>>()?;
    Ok(BoundTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_rule_truth_table() {
        assert!(!xor_result(false, false));
        assert!(xor_result(false, true));
        assert!(xor_result(true, false));
        assert!(!xor_result(true, true));
    }

    #[test]
    fn half_shuffles_match_block_shuffle() {
        // New even branch 2i comes from old odd branch SHUFFLE[2i]; new odd
        // branch 2i+1 from old even branch SHUFFLE[2i+1]. The search labels
        // the two maps the other way round; both labelings give the same bounds.
        use crate::permutation::SHUFFLE;
        let from_odd: Vec<u8> = (0..8).map(|i| ((SHUFFLE[2 * i] - 1) / 2) as u8).collect();
        let from_even: Vec<u8> = (0..8).map(|i| (SHUFFLE[2 * i + 1] / 2) as u8).collect();
        assert_eq!(from_odd, RANDEN_FOR_NEW_ODD);
        assert_eq!(from_even, RANDEN_FOR_NEW_EVEN);
    }

    #[test]
    fn interleaved_split() {
        let m = ActivityMasks::from_interleaved(0b1001_0110, 8);
        assert_eq!(m.even, 0b0110);
        assert_eq!(m.odd, 0b1001);
    }

    #[test]
    fn tables_gather_bits() {
        let t = Network::randen().tables();
        // new_odd bit 0 = even bit 3.
        assert_eq!(t.odd[1 << 3], 1);
        // new_even bit 4 = f_out bit 0.
        assert_eq!(t.even[1], 1 << 4);
        for m in 0..256 {
            assert_eq!((t.odd[m] as u32).count_ones(), (m as u32).count_ones());
        }
    }

    #[test]
    fn fast_rule_small_rounds() {
        let net = Network::randen();
        assert_eq!(fast_min_active(&net, 1), Ok(0));
        assert_eq!(fast_min_active(&net, 2), Ok(1));
        assert_eq!(fast_min_active(&net, 6), Ok(6));
    }

    #[test]
    fn bad_arguments() {
        let net = Network::randen();
        assert_eq!(fast_min_active(&net, 0), Err(SearchError::Rounds(0)));
        assert_eq!(fast_min_active(&net, 25), Err(SearchError::Rounds(25)));
        assert!(Network::new(vec![0, 0], vec![0, 1]).is_err());
        assert!(Network::new(vec![0, 1], vec![0]).is_err());
        assert!(Network::new(vec![], vec![]).is_err());
        assert_eq!(emit_bound_table(&net, 0, 1), Err(SearchError::Rounds(0)));
    }

    #[test]
    fn table_for_six_rounds() {
        let t = emit_bound_table(&Network::randen(), 6, 1).unwrap();
        let pairs: Vec<(usize, u32)> = t.rows.iter().map(|r| (r.rounds, r.bound)).collect();
        assert_eq!(pairs, vec![(1, 0), (2, 1), (3, 2), (4, 3), (5, 4), (6, 6)]);
        assert!(t.all_match());
        let one = emit_bound_table(&Network::randen(), 1, 1).unwrap();
        assert_eq!(one.rows.len(), 1);
        assert_eq!((one.rows[0].rounds, one.rows[0].bound), (1, 0));
    }

    #[test]
    fn perturbed_shuffle_is_flagged() {
        // Cyclic half-shuffles: a much weaker diffusion pattern.
        let net = Network::new(vec![1, 2, 3, 4, 5, 6, 7, 0], vec![0, 1, 2, 3, 4, 5, 6, 7]).unwrap();
        let t = emit_bound_table(&net, 10, 1).unwrap();
        assert!(!t.all_match());
        assert!(t.mismatches().count() > 0);
        assert!(t.to_string().contains("MISMATCH"));
    }
}
