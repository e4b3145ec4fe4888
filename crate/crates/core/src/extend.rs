//! Counting the motif matches that extend one sampled anchor path.
//!
//! Once the anchor is mapped, every vertex of the motif is mapped, so each
//! remaining pattern edge can only match parallel graph edges between two
//! known vertices inside a known time interval. The matches are then the
//! tuples picking one edge per candidate list in increasing time order, which
//! [`list_count`] counts in one merged sweep per adjacent pair of lists.

use crate::graph::{trim, AdjEntry, Cut, TemporalEdge, TemporalGraph, Timestamp, VertexId};
use crate::motif::{build_extension_plan, choose_anchor, Anchor, Direction, End, ExtensionPlan, Motif, TieMode};
use crate::sampler::SampledPath;
use crate::error::Result;

/// Order required between consecutive list elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ListOrder {
    Increasing,
    NonDecreasing,
}

/// One sweep of the chain DP: `out[i]` is the number of chains ending at
/// `cur[i]`, given `prev_counts` for chains ending at each element of `prev`.
/// Both lists must be sorted so that `precedes(prev[j], x)` holds on a prefix
/// of `prev` that only grows as `x` advances through `cur`.
#[inline]
fn chain_step<T, F>(prev: &[T], prev_counts: &[u128], cur: &[T], precedes: F, out: &mut Vec<u128>) -> u128
where
    F: Fn(&T, &T) -> bool,
{
    out.clear();
    let mut j = 0;
    let mut acc = 0u128;
    let mut total = 0u128;
    for x in cur {
        while j < prev.len() && precedes(&prev[j], x) {
            acc += prev_counts[j];
            j += 1;
        }
        out.push(acc);
        total += acc;
    }
    total
}

/// Number of tuples taking one element from each list, in list order, with
/// consecutive elements increasing (or non-decreasing). Lists must be sorted
/// ascending. Runs in time linear in the total list length.
pub fn list_count(lists: &[&[i64]], order: ListOrder) -> u128 {
    let Some((first, rest)) = lists.split_first() else {
        return 0;
    };
    let mut counts = vec![1u128; first.len()];
    let mut next = Vec::new();
    let mut prev: &[i64] = first;
    let mut total = first.len() as u128;
    for list in rest {
        total = match order {
            ListOrder::Increasing => chain_step(prev, &counts, list, |a, b| a < b, &mut next),
            ListOrder::NonDecreasing => chain_step(prev, &counts, list, |a, b| a <= b, &mut next),
        };
        std::mem::swap(&mut counts, &mut next);
        prev = list;
        if total == 0 {
            return 0;
        }
    }
    total
}

/// Reusable buffers for [`Extender::evaluate`].
#[derive(Debug, Default)]
pub struct Scratch {
    counts: Vec<u128>,
    next: Vec<u128>,
}

/// Motif, anchor and plan bundled for repeated per-path counting.
#[derive(Clone, Debug)]
pub struct Extender {
    motif: Motif,
    anchor: Anchor,
    plan: ExtensionPlan,
    delta: Timestamp,
    ties: TieMode,
}

impl Extender {
    pub fn new(motif: &Motif, delta: Timestamp, ties: TieMode) -> Result<Self> {
        let anchor = choose_anchor(motif)?;
        let plan = build_extension_plan(motif, &anchor);
        Ok(Self::from_parts(motif.clone(), anchor, plan, delta, ties))
    }

    pub fn from_parts(motif: Motif, anchor: Anchor, plan: ExtensionPlan, delta: Timestamp, ties: TieMode) -> Self {
        Extender { motif, anchor, plan, delta, ties }
    }

    pub fn motif(&self) -> &Motif {
        &self.motif
    }

    pub fn anchor(&self) -> &Anchor {
        &self.anchor
    }

    pub fn plan(&self) -> &ExtensionPlan {
        &self.plan
    }

    pub fn delta(&self) -> Timestamp {
        self.delta
    }

    pub fn ties(&self) -> TieMode {
        self.ties
    }

    /// Matches whose anchor image is `path`; 0 when the path cannot be an
    /// anchor image.
    pub fn count(&self, g: &TemporalGraph, path: &SampledPath, scratch: &mut Scratch) -> u128 {
        self.evaluate(g, path, scratch).unwrap_or(0)
    }

    /// Like [`count`](Self::count) but distinguishes a rejected anchor
    /// (`None`) from a valid anchor with no extensions (`Some(0)`).
    pub fn evaluate(&self, g: &TemporalGraph, path: &SampledPath, scratch: &mut Scratch) -> Option<u128> {
        let (ids, n) = path.arms();
        let arms = [*g.edge(ids[0]), *g.edge(ids[1])];
        self.evaluate_edges(g, g.edge(path.center()), &arms[..n], scratch)
    }

    /// Images of the anchor's pattern vertices, or `None` when an arm does
    /// not attach to the center the way the anchor requires.
    fn map_anchor(&self, center: &TemporalEdge, arms: &[TemporalEdge]) -> Option<[VertexId; 4]> {
        let anchor = &self.anchor;
        let mut phi = [VertexId::MAX; 4];
        phi[anchor.center_ends.0 as usize] = center.src;
        phi[anchor.center_ends.1 as usize] = center.dst;
        for (arm, e) in anchor.arms.iter().zip(arms) {
            let pivot = match arm.at {
                End::Src => center.src,
                End::Dst => center.dst,
            };
            phi[arm.far as usize] = match arm.spec.dir {
                Direction::In if e.dst == pivot => e.src,
                Direction::Out if e.src == pivot => e.dst,
                _ => return None,
            };
        }
        Some(phi)
    }

    /// [`evaluate`](Self::evaluate) on already resolved anchor edges: the
    /// center and its arms in [`SampledPath::arms`] order.
    pub fn evaluate_edges(
        &self,
        g: &TemporalGraph,
        center: &TemporalEdge,
        arms: &[TemporalEdge],
        scratch: &mut Scratch,
    ) -> Option<u128> {
        const UNSET: VertexId = VertexId::MAX;
        let anchor = &self.anchor;
        if arms.len() != anchor.arms.len() {
            return None;
        }

        let phi = self.map_anchor(center, arms)?;
        let mut anchored: [&TemporalEdge; 3] = [center; 3];
        let slot = |p: usize| anchor.positions.iter().position(|&q| q == p).unwrap();
        for (arm, e) in anchor.arms.iter().zip(arms) {
            anchored[slot(arm.position)] = e;
        }
        let nv = self.motif.num_vertices();
        for i in 0..nv {
            if phi[i] == UNSET || phi[..i].contains(&phi[i]) {
                return None;
            }
        }

        // anchor edges must respect the motif order and fit in the window
        let anchored = &anchored[..anchor.positions.len()];
        let strict = self.ties == TieMode::Strict;
        let ordered = anchored.windows(2).all(|w| {
            if strict {
                w[0].t < w[1].t
            } else {
                w[0].key() < w[1].key()
            }
        });
        if !ordered {
            return None;
        }
        let t0 = anchored[0].t;
        let hi = t0.saturating_add(self.delta);
        if anchored.last().unwrap().t > hi {
            return None;
        }

        if self.plan.is_empty() {
            return Some(1);
        }
        let cut = |e: &TemporalEdge| if strict { Cut::Time(e.t) } else { Cut::Key(e.key()) };
        let Scratch { counts, next } = scratch;
        let mut prev: &[AdjEntry] = &[];
        let mut total = 0u128;
        for (i, step) in self.plan.steps.iter().enumerate() {
            let (a, b) = step.ends;
            let lower = cut(anchored[slot(step.below)]);
            let upper = step.above.map(|p| cut(anchored[slot(p)]));
            let list = trim(g.pair_edges(phi[a as usize], phi[b as usize]), lower, upper, hi);
            if list.is_empty() {
                return Some(0);
            }
            if i == 0 {
                counts.clear();
                counts.resize(list.len(), 1);
                total = list.len() as u128;
            } else {
                total = if strict {
                    chain_step(prev, counts, list, |x, y| x.t < y.t, next)
                } else {
                    chain_step(prev, counts, list, |x, y| x.key() < y.key(), next)
                };
                std::mem::swap(counts, next);
                if total == 0 {
                    return Some(0);
                }
            }
            prev = list;
        }
        Some(total)
    }
}

/// Number of matches of `motif` whose anchor image is `path`.
pub fn check_motif(
    path: &SampledPath,
    motif: &Motif,
    anchor: &Anchor,
    plan: &ExtensionPlan,
    g: &TemporalGraph,
    delta: Timestamp,
    ties: TieMode,
) -> u128 {
    let ext = Extender::from_parts(motif.clone(), anchor.clone(), plan.clone(), delta, ties);
    ext.count(g, path, &mut Scratch::default())
}
