//! Weighted center-edge distribution and uniform sampling of time-windowed
//! wedges and 3-paths.
//!
//! For a center edge `e = (u, v, t)` each arm of the class draws from a
//! temporal adjacency window at `u` or `v`: `[t - delta, t]` for arms before
//! the center and `[t, t + delta]` for arms after it (both ends inclusive).
//! The number of class paths centered at `e` is the product of those window
//! sizes, so drawing `e` proportionally to that product and then each arm
//! uniformly from its window yields a uniform draw over all class paths.
//!
//! Arms may coincide with each other or with the center; such degenerate
//! paths are part of the population and are rejected later by the extension
//! counter.

use rand::Rng;

use crate::error::{Error, Result};
use crate::mem;
use crate::graph::{window, AdjEntry, EdgeId, TemporalEdge, TemporalGraph, Timestamp};
use crate::motif::{ArmSpec, Direction, End, SamplingClass, TimeSide};

/// A sampled wedge or 3-path, as graph edge ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SampledPath {
    /// `first` hangs off the center's source, `last` off its destination.
    Path3 { first: EdgeId, center: EdgeId, last: EdgeId },
    Wedge { base: EdgeId, spoke: EdgeId },
}

impl SampledPath {
    #[inline]
    pub fn center(&self) -> EdgeId {
        match *self {
            SampledPath::Path3 { center, .. } => center,
            SampledPath::Wedge { base, .. } => base,
        }
    }

    /// Arm edges in the order of [`SamplingClass::arms`].
    #[inline]
    pub fn arms(&self) -> ([EdgeId; 2], usize) {
        match *self {
            SampledPath::Path3 { first, last, .. } => ([first, last], 2),
            SampledPath::Wedge { spoke, .. } => ([spoke, spoke], 1),
        }
    }

    fn assemble(class: &SamplingClass, center: EdgeId, arms: [EdgeId; 2]) -> Self {
        match class {
            SamplingClass::Path(_) => SampledPath::Path3 { first: arms[0], center, last: arms[1] },
            SamplingClass::Wedge(_) => SampledPath::Wedge { base: center, spoke: arms[0] },
        }
    }

    /// Checks class membership directly from the edge tuples: incidence,
    /// direction, and the arm time windows.
    pub fn is_member(&self, g: &TemporalGraph, class: &SamplingClass, delta: Timestamp) -> bool {
        let (arms, n) = class.arms();
        let (ids, k) = self.arms();
        if n != k || matches!(self, SampledPath::Wedge { .. }) != matches!(class, SamplingClass::Wedge(_)) {
            return false;
        }
        let c = g.edge(self.center());
        (0..n).all(|i| arm_admits(c, arms[i].0, arms[i].1, g.edge(ids[i]), delta))
    }
}

fn arm_admits(center: &TemporalEdge, at: End, spec: ArmSpec, arm: &TemporalEdge, delta: Timestamp) -> bool {
    let pivot = pivot_vertex(center, at);
    let incident = match spec.dir {
        Direction::In => arm.dst == pivot,
        Direction::Out => arm.src == pivot,
    };
    let timed = match spec.time {
        TimeSide::Before => arm.t <= center.t && center.t - arm.t <= delta,
        TimeSide::After => arm.t >= center.t && arm.t - center.t <= delta,
    };
    incident && timed
}

#[inline]
fn pivot_vertex(center: &TemporalEdge, at: End) -> u32 {
    match at {
        End::Src => center.src,
        End::Dst => center.dst,
    }
}

/// The adjacency window an arm is drawn from.
#[inline]
pub fn arm_window<'g>(
    g: &'g TemporalGraph,
    center: &TemporalEdge,
    at: End,
    spec: ArmSpec,
    delta: Timestamp,
) -> &'g [AdjEntry] {
    let v = pivot_vertex(center, at);
    let t = center.t;
    let (lo, hi) = match spec.time {
        TimeSide::Before => (t.saturating_sub(delta), t),
        TimeSide::After => (t, t.saturating_add(delta)),
    };
    match spec.dir {
        Direction::In => g.in_slice(v, lo, hi),
        Direction::Out => g.out_slice(v, lo, hi),
    }
}

#[derive(Clone, Debug)]
enum Prefix {
    Narrow(Vec<u64>),
    Wide(Vec<u128>),
}

/// Per-edge path counts for one class and window, with inclusive prefix sums
/// for weighted center-edge draws.
#[derive(Clone, Debug)]
pub struct WeightTable {
    class: SamplingClass,
    delta: Timestamp,
    weights: Vec<u64>,
    prefix: Prefix,
    total: u128,
}

/// Builds the weight table: for every edge, the product of its arm window
/// sizes. Each arm is one sweep per vertex over the centers pivoting there,
/// with two cursors into the arm's adjacency list; both window ends only move
/// forward as the center time grows.
pub fn preprocess(g: &TemporalGraph, class: SamplingClass, delta: Timestamp) -> Result<WeightTable> {
    if delta < 0 {
        return Err(Error::InvalidArgument(format!("delta must be non-negative, got {delta}")));
    }
    let (arms, n) = class.arms();
    let mut weights = mem::filled(g.num_edges(), 1u64);
    for &(at, spec) in &arms[..n] {
        for v in 0..g.num_vertices() as u32 {
            let centers = match at {
                End::Src => g.out_edges(v),
                End::Dst => g.in_edges(v),
            };
            let list = match spec.dir {
                Direction::In => g.in_edges(v),
                Direction::Out => g.out_edges(v),
            };
            let (mut lo_idx, mut hi_idx) = (0, 0);
            for c in centers {
                let (lo, hi) = match spec.time {
                    TimeSide::Before => (c.t.saturating_sub(delta), c.t),
                    TimeSide::After => (c.t, c.t.saturating_add(delta)),
                };
                while lo_idx < list.len() && list[lo_idx].t < lo {
                    lo_idx += 1;
                }
                while hi_idx < list.len() && list[hi_idx].t <= hi {
                    hi_idx += 1;
                }
                weights[c.id as usize] *= hi_idx.saturating_sub(lo_idx) as u64;
            }
        }
    }

    let mut narrow = mem::with_capacity(weights.len());
    let mut acc = 0u64;
    let mut overflowed = false;
    for &w in &weights {
        match acc.checked_add(w) {
            Some(s) => {
                acc = s;
                narrow.push(acc);
            }
            None => {
                overflowed = true;
                break;
            }
        }
    }
    let (prefix, total) = if overflowed {
        drop(narrow);
        let mut acc = 0u128;
        let wide: Vec<u128> = weights
            .iter()
            .map(|&w| {
                acc += w as u128;
                acc
            })
            .collect();
        (Prefix::Wide(wide), acc)
    } else {
        (Prefix::Narrow(narrow), acc as u128)
    };
    Ok(WeightTable { class, delta, weights, prefix, total })
}

impl WeightTable {
    #[inline]
    pub fn class(&self) -> SamplingClass {
        self.class
    }

    #[inline]
    pub fn delta(&self) -> Timestamp {
        self.delta
    }

    /// Total number of class paths.
    #[inline]
    pub fn total(&self) -> u128 {
        self.total
    }

    #[inline]
    pub fn weight(&self, e: EdgeId) -> u64 {
        self.weights[e as usize]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Cumulative weight through edge `e` (inclusive).
    pub fn cumulative(&self, e: EdgeId) -> u128 {
        match &self.prefix {
            Prefix::Narrow(p) => p[e as usize] as u128,
            Prefix::Wide(p) => p[e as usize],
        }
    }

    /// Whether prefix sums had to be widened past 64 bits.
    pub fn is_wide(&self) -> bool {
        matches!(self.prefix, Prefix::Wide(_))
    }

    /// Draws a center edge with probability `w[e] / W`. `None` when `W == 0`.
    #[inline]
    pub fn sample_center<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<EdgeId> {
        if self.total == 0 {
            return None;
        }
        let idx = match &self.prefix {
            Prefix::Narrow(p) => {
                let r = rng.random_range(0..self.total as u64);
                p.partition_point(|&c| c <= r)
            }
            Prefix::Wide(p) => {
                let r = rng.random_range(0..self.total);
                p.partition_point(|&c| c <= r)
            }
        };
        Some(idx as EdgeId)
    }

    /// Draws one class path uniformly. `None` when there are none.
    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, g: &TemporalGraph, rng: &mut R) -> Option<SampledPath> {
        let center = self.sample_center(rng)?;
        let c = g.edge(center);
        let (arms, n) = self.class.arms();
        let mut picked = [0 as EdgeId; 2];
        for i in 0..n {
            let (at, spec) = arms[i];
            let window = arm_window(g, c, at, spec, self.delta);
            debug_assert!(!window.is_empty());
            picked[i] = window[rng.random_range(0..window.len())].id;
        }
        if n == 1 {
            picked[1] = picked[0];
        }
        let path = SampledPath::assemble(&self.class, center, picked);
        debug_assert!(path.is_member(g, &self.class, self.delta));
        Some(path)
    }
}

/// Samples advanced together by [`WeightTable::sample_group`].
pub const GROUP: usize = 32;

/// A sampled path with its edges already resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Draw {
    pub center: TemporalEdge,
    /// Arm edges in [`SamplingClass::arms`] order; only the first
    /// `num_arms` are meaningful.
    pub arms: [TemporalEdge; 2],
    pub num_arms: usize,
}

impl Draw {
    pub fn path(&self) -> SampledPath {
        match self.num_arms {
            2 => SampledPath::Path3 { first: self.arms[0].id, center: self.center.id, last: self.arms[1].id },
            _ => SampledPath::Wedge { base: self.center.id, spoke: self.arms[0].id },
        }
    }

    pub fn arm_edges(&self) -> &[TemporalEdge] {
        &self.arms[..self.num_arms]
    }
}

/// Index of the first prefix sum above each target, for all targets at once:
/// every round halves all search ranges, so the memory loads of different
/// targets are independent and can be in flight together.
fn lockstep_search<T: Copy + PartialOrd>(prefix: &[T], targets: &[T], out: &mut [usize]) {
    let mut base = [0usize; GROUP];
    let mut len = prefix.len();
    while len > 1 {
        let half = len / 2;
        for (b, &r) in base.iter_mut().zip(targets) {
            *b += half * (prefix[*b + half] <= r) as usize;
        }
        len -= half;
    }
    for ((o, &b), &r) in out.iter_mut().zip(&base).zip(targets) {
        *o = b + (prefix[b] <= r) as usize;
    }
}

impl WeightTable {
    /// Draws `count <= GROUP` independent uniform class paths into `out`,
    /// interleaving the memory accesses of the whole group stage by stage.
    /// Leaves `out` empty when `W == 0`.
    pub fn sample_group<R: Rng + ?Sized>(&self, g: &TemporalGraph, rng: &mut R, count: usize, out: &mut Vec<Draw>) {
        assert!(count <= GROUP, "group larger than {GROUP}");
        out.clear();
        if self.total == 0 || count == 0 {
            return;
        }
        let mut idx = [0usize; GROUP];
        match &self.prefix {
            Prefix::Narrow(p) => {
                let mut r = [0u64; GROUP];
                for x in &mut r[..count] {
                    *x = rng.random_range(0..self.total as u64);
                }
                lockstep_search(p, &r[..count], &mut idx[..count]);
            }
            Prefix::Wide(p) => {
                let mut r = [0u128; GROUP];
                for x in &mut r[..count] {
                    *x = rng.random_range(0..self.total);
                }
                lockstep_search(p, &r[..count], &mut idx[..count]);
            }
        }
        let edges = g.edges();
        out.extend(idx[..count].iter().map(|&i| Draw { center: edges[i], arms: [edges[i]; 2], num_arms: 0 }));

        let (arms, n) = self.class.arms();
        let mut lists: [&[AdjEntry]; GROUP] = [&[]; GROUP];
        for (a, &(at, spec)) in arms[..n].iter().enumerate() {
            for (l, d) in lists.iter_mut().zip(out.iter()) {
                let v = pivot_vertex(&d.center, at);
                *l = match spec.dir {
                    Direction::In => g.in_edges(v),
                    Direction::Out => g.out_edges(v),
                };
            }
            // pull the first line of every list before searching any of them
            let mut touch = 0;
            for l in &lists[..count] {
                touch ^= l.first().map_or(0, |e| e.t);
            }
            std::hint::black_box(touch);
            for (l, d) in lists.iter().zip(out.iter_mut()) {
                let t = d.center.t;
                let (lo, hi) = match spec.time {
                    TimeSide::Before => (t.saturating_sub(self.delta), t),
                    TimeSide::After => (t, t.saturating_add(self.delta)),
                };
                let w = window(l, lo, hi);
                debug_assert!(!w.is_empty());
                let pick = w[rng.random_range(0..w.len())];
                let pivot = pivot_vertex(&d.center, at);
                let (src, dst) = match spec.dir {
                    Direction::In => (pick.other, pivot),
                    Direction::Out => (pivot, pick.other),
                };
                d.arms[a] = TemporalEdge { src, dst, t: pick.t, id: pick.id };
                d.num_arms = a + 1;
            }
        }
        debug_assert!(out.iter().all(|d| d.path().is_member(g, &self.class, self.delta)));
    }
}

/// Draws one class path uniformly from a prepared table (works for both
/// 3-path and wedge classes).
pub fn sample_path<R: Rng + ?Sized>(table: &WeightTable, g: &TemporalGraph, rng: &mut R) -> Option<SampledPath> {
    table.sample(g, rng)
}

/// Lists every class path by scanning full adjacency lists, without the
/// binary-search windows used by [`preprocess`]. Fails once more than `cap`
/// paths are found.
pub fn enumerate_paths(
    g: &TemporalGraph,
    class: SamplingClass,
    delta: Timestamp,
    cap: u64,
) -> Result<Vec<SampledPath>> {
    let mut out = Vec::new();
    let mut found = 0u64;
    let (arms, n) = class.arms();
    let mut candidates: [Vec<EdgeId>; 2] = [Vec::new(), Vec::new()];
    for c in g.edges() {
        for i in 0..n {
            let (at, spec) = arms[i];
            let v = pivot_vertex(c, at);
            let full = match spec.dir {
                Direction::In => g.in_edges(v),
                Direction::Out => g.out_edges(v),
            };
            candidates[i].clear();
            candidates[i].extend(
                full.iter()
                    .map(|a| a.id)
                    .filter(|&id| arm_admits(c, at, spec, g.edge(id), delta)),
            );
        }
        let second: &[EdgeId] = if n == 2 { &candidates[1] } else { &[0] };
        for &a in &candidates[0] {
            for &b in second {
                found += 1;
                if found > cap {
                    return Err(Error::CapExceeded { cap });
                }
                out.push(SampledPath::assemble(&class, c.id, [a, if n == 2 { b } else { a }]));
            }
        }
    }
    Ok(out)
}
