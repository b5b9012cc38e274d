//! Exact branch-and-bound search for the minimum number of active functions.
//!
//! Nodes are `(round, masks, active)`. Whenever an even branch and its odd
//! neighbour are both active, the node forks into every combination of
//! cancel / no-cancel outcomes. Each worker drains a bucket queue ordered by
//! active count, so the first node to reach the final round is that worker's
//! optimum. The incumbent starts at the fast-rule result (which is itself one
//! of the explored paths, hence a valid upper bound) and is shared between
//! workers through an atomic minimum. Nodes with `active >= best` are pruned.
//!
//! A node can also be dropped when the same `(round, masks)` was already
//! queued by this worker with an equal or smaller active count, since its
//! subtree is identical. This keeps 14+ round searches to seconds.

use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};

use super::{check_rounds, fast_min_active, ActivityMasks, Network, SearchError, SearchNode, ShuffleTables};

/// Priority queue keyed by active count: one stack per count plus an
/// occupancy bitmap scanned with `trailing_zeros`.
struct BucketQueue {
    buckets: Vec<Vec<SearchNode>>,
    occupied: Vec<u64>,
}

impl BucketQueue {
    fn new(max_key: usize) -> Self {
        BucketQueue { buckets: vec![Vec::new(); max_key + 1], occupied: vec![0; max_key / 64 + 1] }
    }

    #[inline]
    fn push(&mut self, node: SearchNode) {
        let k = node.active as usize;
        self.buckets[k].push(node);
        self.occupied[k / 64] |= 1 << (k % 64);
    }

    #[inline]
    fn pop(&mut self) -> Option<SearchNode> {
        let word = self.occupied.iter().position(|&w| w != 0)?;
        let k = 64 * word + self.occupied[word].trailing_zeros() as usize;
        let node = self.buckets[k].pop();
        if self.buckets[k].is_empty() {
            self.occupied[word] &= !(1 << (k % 64));
        }
        node
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub min_active: u32,
    /// Nodes popped and expanded, summed over workers.
    pub expanded: u64,
}

/// Configurable exact search.
#[derive(Clone, Debug)]
pub struct ExactSearch {
    network: Network,
    workers: usize,
    dominance: bool,
}

impl ExactSearch {
    pub fn new(network: Network) -> Self {
        ExactSearch { network, workers: 1, dominance: true }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    /// Disables the per-worker `(round, masks)` table, leaving plain
    /// branch-and-bound. Only practical for short searches.
    pub fn dominance(mut self, enabled: bool) -> Self {
        self.dominance = enabled;
        self
    }

    pub fn run(&self, rounds: usize) -> Result<SearchOutcome, SearchError> {
        check_rounds(rounds)?;
        if self.workers == 0 {
            return Err(SearchError::ZeroWorkers);
        }
        let best = AtomicU32::new(fast_min_active(&self.network, rounds)?);
        let expanded = AtomicU64::new(0);
        let tables = self.network.tables();
        let initial: Vec<ActivityMasks> = tables.initial_masks().collect();

        std::thread::scope(|scope| {
            for w in 0..self.workers {
                let shard: Vec<ActivityMasks> =
                    initial.iter().skip(w).step_by(self.workers).copied().collect();
                let (tables, best, expanded) = (&tables, &best, &expanded);
                let dominance = self.dominance;
                scope.spawn(move || {
                    let n = run_worker(tables, rounds, &shard, best, dominance);
                    expanded.fetch_add(n, Ordering::Relaxed);
                });
            }
        });

        Ok(SearchOutcome { min_active: best.into_inner(), expanded: expanded.into_inner() })
    }
}

fn run_worker(
    tables: &ShuffleTables,
    rounds: usize,
    shard: &[ActivityMasks],
    best: &AtomicU32,
    dominance: bool,
) -> u64 {
    let mask_space = 1usize << (2 * tables.width);
    let slot = |round: u8, m: ActivityMasks| {
        round as usize * mask_space + ((m.even as usize) << tables.width | m.odd as usize)
    };
    let mut seen = if dominance { vec![u16::MAX; (rounds + 1) * mask_space] } else { Vec::new() };
    let mut queue = BucketQueue::new(tables.width * rounds);
    let mut expanded = 0u64;

    for &masks in shard {
        queue.push(SearchNode { round: 0, masks, active: 0 });
    }

    while let Some(node) = queue.pop() {
        let incumbent = best.load(Ordering::Relaxed);
        if u32::from(node.active) >= incumbent {
            // Everything left in the queue is at least as costly.
            break;
        }
        if node.round as usize == rounds {
            best.fetch_min(u32::from(node.active), Ordering::Relaxed);
            break;
        }
        expanded += 1;

        let ActivityMasks { even, odd } = node.masks;
        let active = node.active + even.count_ones() as u16;
        if u32::from(active) >= incumbent {
            continue;
        }
        let new_odd = tables.odd[even as usize];
        let certain = even ^ odd;
        let both = even & odd;
        let round = node.round + 1;

        // Enumerate every subset of the both-active positions that stays active.
        let mut sub = both;
        loop {
            let masks = ActivityMasks { even: tables.even[(certain | sub) as usize], odd: new_odd };
            let child = SearchNode { round, masks, active };
            let keep = if dominance {
                let s = slot(round, masks);
                if seen[s] > active {
                    seen[s] = active;
                    true
                } else {
                    false
                }
            } else {
                true
            };
            if keep {
                queue.push(child);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & both;
        }
    }
    expanded
}

/// True minimum active functions over `rounds` rounds.
pub fn exact_min_active(network: &Network, rounds: usize, workers: usize) -> Result<u32, SearchError> {
    ExactSearch::new(network.clone()).workers(workers).run(rounds).map(|o| o.min_active)
}
