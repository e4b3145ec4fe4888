//! Exact motif counting by chronological backtracking.
//!
//! Every graph edge is tried as the image of motif position 0; later
//! positions are filled in order with edges strictly after the previous one
//! and no later than `t0 + delta`. Candidates come from the pair index when
//! both endpoints are already mapped, from one adjacency list when one is, and
//! from the global time-sorted edge array otherwise.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{trim, Cut, EdgeKey, TemporalEdge, TemporalGraph, Timestamp, VertexId};
use crate::motif::{Motif, PatternVertex, TieMode};

/// Search nodes counted locally before being published to the shared budget.
const FLUSH: u64 = 1 << 12;

const UNSET: VertexId = VertexId::MAX;

struct Budget {
    cap: u64,
    used: AtomicU64,
    aborted: AtomicBool,
}

impl Budget {
    fn new(cap: u64) -> Self {
        Budget { cap, used: AtomicU64::new(0), aborted: AtomicBool::new(false) }
    }

    fn charge(&self, n: u64) -> bool {
        let total = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if total > self.cap {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

struct Search<'a> {
    g: &'a TemporalGraph,
    pattern: &'a [(PatternVertex, PatternVertex)],
    delta: Timestamp,
    strict: bool,
    budget: &'a Budget,
    phi: [VertexId; 4],
    pending: u64,
    flush: u64,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a TemporalGraph, motif: &'a Motif, delta: Timestamp, ties: TieMode, budget: &'a Budget) -> Self {
        Search {
            g,
            pattern: motif.edges(),
            delta,
            strict: ties == TieMode::Strict,
            budget,
            phi: [UNSET; 4],
            pending: 0,
            flush: FLUSH.min(budget.cap.max(1)),
            aborted: false,
        }
    }

    fn tick(&mut self) -> bool {
        self.pending += 1;
        if self.pending >= self.flush {
            let n = std::mem::take(&mut self.pending);
            if !self.budget.charge(n) {
                self.aborted = true;
            }
        }
        !self.aborted
    }

    fn finish(&mut self) {
        let n = std::mem::take(&mut self.pending);
        if !self.budget.charge(n) {
            self.aborted = true;
        }
    }

    /// Matches whose position-0 image is `root`.
    fn count_root(&mut self, root: &TemporalEdge) -> u128 {
        let (a, b) = self.pattern[0];
        if root.src == root.dst {
            return 0;
        }
        self.phi = [UNSET; 4];
        self.phi[a as usize] = root.src;
        self.phi[b as usize] = root.dst;
        let hi = root.t.saturating_add(self.delta);
        self.extend(1, root.key(), hi)
    }

    fn extend(&mut self, pos: usize, prev: EdgeKey, hi: Timestamp) -> u128 {
        if pos == self.pattern.len() {
            return 1;
        }
        if !self.tick() {
            return 0;
        }
        let (a, b) = self.pattern[pos];
        let (pa, pb) = (self.phi[a as usize], self.phi[b as usize]);
        let lower = if self.strict { Cut::Time(prev.t) } else { Cut::Key(prev) };
        let g = self.g;
        let mut total = 0u128;
        match (pa != UNSET, pb != UNSET) {
            (true, true) => {
                for e in trim(g.pair_edges(pa, pb), lower, None, hi) {
                    total += self.extend(pos + 1, EdgeKey { t: e.t, id: e.id }, hi);
                }
            }
            (true, false) => {
                for e in trim(g.out_edges(pa), lower, None, hi) {
                    self.phi[b as usize] = UNSET;
                    if self.phi.contains(&e.other) {
                        continue;
                    }
                    self.phi[b as usize] = e.other;
                    total += self.extend(pos + 1, EdgeKey { t: e.t, id: e.id }, hi);
                }
                self.phi[b as usize] = UNSET;
            }
            (false, true) => {
                for e in trim(g.in_edges(pb), lower, None, hi) {
                    self.phi[a as usize] = UNSET;
                    if self.phi.contains(&e.other) {
                        continue;
                    }
                    self.phi[a as usize] = e.other;
                    total += self.extend(pos + 1, EdgeKey { t: e.t, id: e.id }, hi);
                }
                self.phi[a as usize] = UNSET;
            }
            (false, false) => {
                let edges = g.edges();
                let from = match lower {
                    Cut::Time(t) => edges.partition_point(|e| e.t <= t),
                    Cut::Key(k) => edges.partition_point(|e| e.key() <= k),
                };
                let to = edges.partition_point(|e| e.t <= hi);
                for e in &edges[from..to.max(from)] {
                    self.phi[a as usize] = UNSET;
                    self.phi[b as usize] = UNSET;
                    if e.src == e.dst || self.phi.contains(&e.src) || self.phi.contains(&e.dst) {
                        continue;
                    }
                    self.phi[a as usize] = e.src;
                    self.phi[b as usize] = e.dst;
                    total += self.extend(pos + 1, e.key(), hi);
                }
                self.phi[a as usize] = UNSET;
                self.phi[b as usize] = UNSET;
            }
        }
        total
    }
}

/// Exact number of matches. Fails with [`Error::CapExceeded`] once more than
/// `cap` search nodes have been expanded.
pub fn exact_count(g: &TemporalGraph, motif: &Motif, delta: Timestamp, ties: TieMode, cap: u64) -> Result<u128> {
    check_delta(delta)?;
    let budget = Budget::new(cap);
    let mut search = Search::new(g, motif, delta, ties, &budget);
    let mut total = 0u128;
    for root in g.edges() {
        total += search.count_root(root);
        if search.aborted {
            return Err(Error::CapExceeded { cap });
        }
    }
    search.finish();
    if search.aborted {
        return Err(Error::CapExceeded { cap });
    }
    Ok(total)
}

/// [`exact_count`] with root edges distributed over `threads` workers
/// (0 = all cores). Same result for every thread count.
pub fn exact_count_parallel(
    g: &TemporalGraph,
    motif: &Motif,
    delta: Timestamp,
    ties: TieMode,
    cap: u64,
    threads: usize,
) -> Result<u128> {
    if threads == 1 {
        return exact_count(g, motif, delta, ties, cap);
    }
    check_delta(delta)?;
    let budget = Budget::new(cap);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let total = pool.install(|| {
        g.edges()
            .par_chunks(256)
            .map(|roots| {
                let mut search = Search::new(g, motif, delta, ties, &budget);
                let mut sum = 0u128;
                for root in roots {
                    if search.aborted || budget.aborted.load(Ordering::Relaxed) {
                        return 0;
                    }
                    sum += search.count_root(root);
                }
                search.finish();
                sum
            })
            .sum::<u128>()
    });
    if budget.aborted.load(Ordering::Relaxed) {
        return Err(Error::CapExceeded { cap });
    }
    Ok(total)
}

fn check_delta(delta: Timestamp) -> Result<()> {
    if delta < 0 {
        return Err(Error::InvalidArgument(format!("delta must be non-negative, got {delta}")));
    }
    Ok(())
}
