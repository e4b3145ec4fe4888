//! Time-indexed directed multigraph.
//!
//! Edges are kept in one array sorted by `(t, input order)`; the position in
//! that array is the edge id. Every vertex owns three blocks of [`AdjEntry`]:
//!
//! * out-edges sorted by `(t, id)`,
//! * in-edges sorted by `(t, id)`,
//! * out-edges sorted by `(dst, t, id)`, which doubles as the per-pair index:
//!   the `(u, v)` edge list is the `dst == v` run inside `u`'s block.
//!
//! All window queries are two `partition_point` calls on one of these blocks.

mod load;

pub use load::{load_graph, parse_edges, EdgeFormat, LoadOptions};

use std::collections::HashMap;

use crate::mem;

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;
pub type Timestamp = i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TemporalEdge {
    pub src: VertexId,
    pub dst: VertexId,
    pub t: Timestamp,
    pub id: EdgeId,
}

impl TemporalEdge {
    #[inline]
    pub fn key(&self) -> EdgeKey {
        EdgeKey { t: self.t, id: self.id }
    }
}

/// Total order on edges: timestamp, then global id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    pub t: Timestamp,
    pub id: EdgeId,
}

/// One adjacency entry. `other` is the far endpoint (dst for out-lists, src
/// for in-lists).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdjEntry {
    pub t: Timestamp,
    pub other: VertexId,
    pub id: EdgeId,
}

impl AdjEntry {
    #[inline]
    pub fn key(&self) -> EdgeKey {
        EdgeKey { t: self.t, id: self.id }
    }
}

/// Exclusive cut used to trim a time-sorted list from one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cut {
    /// Compare timestamps only.
    Time(Timestamp),
    /// Compare `(t, id)` keys.
    Key(EdgeKey),
}

impl Cut {
    #[inline]
    fn is_at_or_before(&self, e: &AdjEntry) -> bool {
        match *self {
            Cut::Time(t) => e.t <= t,
            Cut::Key(k) => e.key() <= k,
        }
    }

    #[inline]
    fn is_after(&self, e: &AdjEntry) -> bool {
        match *self {
            Cut::Time(t) => e.t < t,
            Cut::Key(k) => e.key() < k,
        }
    }
}

/// Entries of a `(t, id)`-sorted list strictly after `lower`, strictly before
/// `upper` (when given) and with `t <= hi`.
#[inline]
pub fn trim(entries: &[AdjEntry], lower: Cut, upper: Option<Cut>, hi: Timestamp) -> &[AdjEntry] {
    let a = entries.partition_point(|e| lower.is_at_or_before(e));
    let mut b = entries.partition_point(|e| e.t <= hi);
    if let Some(cut) = upper {
        b = b.min(entries.partition_point(|e| cut.is_after(e)));
    }
    if a >= b {
        &[]
    } else {
        &entries[a..b]
    }
}

/// Entries with `lo <= t <= hi`.
#[inline]
pub fn window(entries: &[AdjEntry], lo: Timestamp, hi: Timestamp) -> &[AdjEntry] {
    let a = entries.partition_point(|e| e.t < lo);
    let b = entries.partition_point(|e| e.t <= hi);
    if a >= b {
        &[]
    } else {
        &entries[a..b]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalGraph {
    labels: Vec<i64>,
    edges: Vec<TemporalEdge>,
    out_offsets: Vec<usize>,
    out_adj: Vec<AdjEntry>,
    in_offsets: Vec<usize>,
    in_adj: Vec<AdjEntry>,
    // shares out_offsets
    pair_adj: Vec<AdjEntry>,
}

impl TemporalGraph {
    /// Builds a graph from dense vertex ids. The vertex count is one past the
    /// largest id seen; labels are the ids themselves.
    pub fn from_edges<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Timestamp)>,
    {
        Self::from_edges_with(edges, &LoadOptions::default())
    }

    pub fn from_edges_with<I>(edges: I, opts: &LoadOptions) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Timestamp)>,
    {
        let raw: Vec<(VertexId, VertexId, Timestamp)> = edges.into_iter().collect();
        let mut n = 0usize;
        for (i, &(u, v, t)) in raw.iter().enumerate() {
            check_edge(i + 1, u as i64, v as i64, t, opts)?;
            n = n.max(u as usize + 1).max(v as usize + 1);
        }
        let labels = (0..n as i64).collect();
        Ok(Self::build(labels, raw))
    }

    /// Builds a graph from arbitrary integer labels, remapped to dense ids in
    /// first-appearance order.
    pub fn from_labeled_edges<I>(edges: I, opts: &LoadOptions) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, i64, Timestamp)>,
    {
        let mut ids: HashMap<i64, VertexId> = HashMap::new();
        let mut labels = Vec::new();
        let mut raw = Vec::new();
        let mut intern = |label: i64| -> VertexId {
            *ids.entry(label).or_insert_with(|| {
                labels.push(label);
                (labels.len() - 1) as VertexId
            })
        };
        for (i, (a, b, t)) in edges.into_iter().enumerate() {
            check_edge(i + 1, a, b, t, opts)?;
            let u = intern(a);
            let v = intern(b);
            raw.push((u, v, t));
        }
        Ok(Self::build(labels, raw))
    }

    fn build(labels: Vec<i64>, raw: Vec<(VertexId, VertexId, Timestamp)>) -> Self {
        let n = labels.len();
        assert!(raw.len() <= EdgeId::MAX as usize, "edge count exceeds u32 ids");

        let mut order: Vec<u32> = (0..raw.len() as u32).collect();
        // stable: ties keep input order
        order.sort_by_key(|&i| raw[i as usize].2);
        let edges: Vec<TemporalEdge> = mem::collect(order.iter().enumerate().map(|(id, &i)| {
            let (src, dst, t) = raw[i as usize];
            TemporalEdge { src, dst, t, id: id as EdgeId }
        }));
        drop(order);

        let (out_offsets, out_adj) = csr(n, &edges, |e| (e.src, e.dst));
        let (in_offsets, in_adj) = csr(n, &edges, |e| (e.dst, e.src));

        let mut pair_adj = mem::collect(out_adj.iter().copied());
        for v in 0..n {
            pair_adj[out_offsets[v]..out_offsets[v + 1]].sort_unstable_by_key(|e| (e.other, e.t, e.id));
        }

        TemporalGraph { labels, edges, out_offsets, out_adj, in_offsets, in_adj, pair_adj }
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// All edges in `(t, id)` order.
    #[inline]
    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> &TemporalEdge {
        &self.edges[id as usize]
    }

    /// Original label of a dense vertex id.
    pub fn label(&self, v: VertexId) -> i64 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// `(first, last)` timestamp, or `None` for an empty graph.
    pub fn time_range(&self) -> Option<(Timestamp, Timestamp)> {
        Some((self.edges.first()?.t, self.edges.last()?.t))
    }

    pub fn time_span(&self) -> Timestamp {
        self.time_range().map_or(0, |(a, b)| b - a)
    }

    #[inline]
    pub fn out_edges(&self, v: VertexId) -> &[AdjEntry] {
        let v = v as usize;
        if v >= self.labels.len() {
            return &[];
        }
        &self.out_adj[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    #[inline]
    pub fn in_edges(&self, v: VertexId) -> &[AdjEntry] {
        let v = v as usize;
        if v >= self.labels.len() {
            return &[];
        }
        &self.in_adj[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    /// Out-edges of `v` with `lo <= t <= hi`.
    #[inline]
    pub fn out_slice(&self, v: VertexId, lo: Timestamp, hi: Timestamp) -> &[AdjEntry] {
        window(self.out_edges(v), lo, hi)
    }

    #[inline]
    pub fn in_slice(&self, v: VertexId, lo: Timestamp, hi: Timestamp) -> &[AdjEntry] {
        window(self.in_edges(v), lo, hi)
    }

    #[inline]
    pub fn out_degree(&self, v: VertexId, lo: Timestamp, hi: Timestamp) -> usize {
        self.out_slice(v, lo, hi).len()
    }

    #[inline]
    pub fn in_degree(&self, v: VertexId, lo: Timestamp, hi: Timestamp) -> usize {
        self.in_slice(v, lo, hi).len()
    }

    /// Every `(u, v)` edge, sorted by `(t, id)`.
    #[inline]
    pub fn pair_edges(&self, u: VertexId, v: VertexId) -> &[AdjEntry] {
        let ui = u as usize;
        if ui >= self.labels.len() {
            return &[];
        }
        let block = &self.pair_adj[self.out_offsets[ui]..self.out_offsets[ui + 1]];
        let a = block.partition_point(|e| e.other < v);
        let b = a + block[a..].partition_point(|e| e.other == v);
        &block[a..b]
    }

    /// Number of `(u, v)` edges with `lo <= t <= hi`.
    pub fn multiplicity(&self, u: VertexId, v: VertexId, lo: Timestamp, hi: Timestamp) -> usize {
        window(self.pair_edges(u, v), lo, hi).len()
    }

    /// `(u, v)` edges with `lo_exclusive < t < hi`, or `<= hi` when
    /// `hi_inclusive` is set.
    pub fn pair_slice(
        &self,
        u: VertexId,
        v: VertexId,
        lo_exclusive: Timestamp,
        hi: Timestamp,
        hi_inclusive: bool,
    ) -> &[AdjEntry] {
        let upper = if hi_inclusive { None } else { Some(Cut::Time(hi)) };
        trim(self.pair_edges(u, v), Cut::Time(lo_exclusive), upper, hi)
    }

    /// Largest number of parallel `(u, v)` edges inside any window of length
    /// `delta`.
    pub fn max_multiplicity(&self, delta: Timestamp) -> usize {
        let mut best = 0;
        for v in 0..self.labels.len() {
            let block = &self.pair_adj[self.out_offsets[v]..self.out_offsets[v + 1]];
            for run in block.chunk_by(|a, b| a.other == b.other) {
                let mut lo = 0;
                for hi in 0..run.len() {
                    while run[hi].t - run[lo].t > delta {
                        lo += 1;
                    }
                    best = best.max(hi - lo + 1);
                }
            }
        }
        best
    }
}

fn check_edge(line: usize, u: i64, v: i64, t: Timestamp, opts: &LoadOptions) -> Result<()> {
    if t < 0 {
        return Err(Error::NegativeTimestamp { line, t });
    }
    if u == v && !opts.allow_self_loops {
        return Err(Error::SelfLoop { line, label: u });
    }
    Ok(())
}

fn csr<F>(n: usize, edges: &[TemporalEdge], ends: F) -> (Vec<usize>, Vec<AdjEntry>)
where
    F: Fn(&TemporalEdge) -> (VertexId, VertexId),
{
    let mut offsets = mem::filled(n + 1, 0usize);
    for e in edges {
        offsets[ends(e).0 as usize + 1] += 1;
    }
    for v in 0..n {
        offsets[v + 1] += offsets[v];
    }
    let mut cursor = offsets.clone();
    let mut adj = mem::filled(edges.len(), AdjEntry { t: 0, other: 0, id: 0 });
    for e in edges {
        let (owner, other) = ends(e);
        let slot = &mut cursor[owner as usize];
        adj[*slot] = AdjEntry { t: e.t, other, id: e.id };
        *slot += 1;
    }
    (offsets, adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TemporalGraph {
        TemporalGraph::from_edges([(1, 2, 10), (1, 2, 12), (1, 3, 30), (1, 2, 30), (3, 1, 5)]).unwrap()
    }

    #[test]
    fn degree_windows() {
        let g = TemporalGraph::from_edges([(0, 1, 10), (0, 2, 12), (0, 3, 30)]).unwrap();
        assert_eq!(g.out_degree(0, 9, 13), 2);
        assert_eq!(g.out_degree(0, 31, 40), 0);
        assert_eq!(g.out_slice(0, 9, 13).len(), 2);
        assert_eq!(g.in_degree(3, 30, 30), 1);
        assert_eq!(g.out_degree(7, 0, 100), 0);
    }

    #[test]
    fn multiplicity_and_pair_slice() {
        let g = TemporalGraph::from_edges([(1, 2, 10), (1, 2, 12), (1, 2, 30)]).unwrap();
        assert_eq!(g.multiplicity(1, 2, 9, 13), 2);
        assert_eq!(g.multiplicity(2, 1, 0, 100), 0);
        let ts: Vec<_> = g.pair_slice(1, 2, 10, 30, true).iter().map(|e| e.t).collect();
        assert_eq!(ts, [12, 30]);
        assert!(g.pair_slice(1, 2, 12, 12, true).is_empty());
        let ts: Vec<_> = g.pair_slice(1, 2, 10, 30, false).iter().map(|e| e.t).collect();
        assert_eq!(ts, [12]);
    }

    #[test]
    fn edges_sorted_with_stable_ties() {
        let g = TemporalGraph::from_edges([(0, 1, 5), (2, 3, 1), (1, 0, 5), (3, 2, 1)]).unwrap();
        let e: Vec<_> = g.edges().iter().map(|e| (e.src, e.dst, e.t, e.id)).collect();
        assert_eq!(e, [(2, 3, 1, 0), (3, 2, 1, 1), (0, 1, 5, 2), (1, 0, 5, 3)]);
    }

    #[test]
    fn pair_index_partitions_out_lists() {
        let g = sample();
        for u in 0..g.num_vertices() as u32 {
            let total: usize = (0..g.num_vertices() as u32).map(|v| g.pair_edges(u, v).len()).sum();
            assert_eq!(total, g.out_edges(u).len());
        }
    }

    #[test]
    fn max_multiplicity_sliding_window() {
        let g = sample();
        assert_eq!(g.max_multiplicity(0), 1);
        assert_eq!(g.max_multiplicity(2), 2);
        assert_eq!(g.max_multiplicity(20), 3);
    }

    #[test]
    fn trim_by_key_breaks_ties_on_id() {
        let g = TemporalGraph::from_edges([(0, 1, 5), (0, 1, 5), (0, 1, 5)]).unwrap();
        let all = g.pair_edges(0, 1);
        let after_first = trim(all, Cut::Key(all[0].key()), None, 5);
        assert_eq!(after_first.len(), 2);
        assert!(trim(all, Cut::Time(5), None, 5).is_empty());
        let between = trim(all, Cut::Key(all[0].key()), Some(Cut::Key(all[2].key())), 5);
        assert_eq!(between.len(), 1);
    }

    #[test]
    fn rejects_self_loops_unless_enabled() {
        assert!(matches!(TemporalGraph::from_edges([(1, 1, 3)]), Err(Error::SelfLoop { line: 1, .. })));
        let opts = LoadOptions { allow_self_loops: true };
        let g = TemporalGraph::from_edges_with([(1, 1, 3)], &opts).unwrap();
        assert_eq!(g.num_edges(), 1);
    }
}
