//! Seeded synthetic temporal graphs for tests, examples and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};

use crate::error::{Error, Result};
use crate::graph::{TemporalGraph, Timestamp, VertexId};

/// `m` edges between uniformly random distinct endpoints among `n` vertices,
/// timestamps uniform in `0..=t_max`. A small `t_max` produces many ties.
pub fn uniform_edges(n: u32, m: usize, t_max: Timestamp, seed: u64) -> Vec<(VertexId, VertexId, Timestamp)> {
    assert!(n >= 2, "need at least two vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| {
            let u = rng.random_range(0..n);
            let mut v = rng.random_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v, rng.random_range(0..=t_max))
        })
        .collect()
}

pub fn uniform_graph(n: u32, m: usize, t_max: Timestamp, seed: u64) -> TemporalGraph {
    TemporalGraph::from_edges(uniform_edges(n, m, t_max, seed)).expect("generated edges are valid")
}

/// Parameters of [`community_graph`].
#[derive(Clone, Copy, Debug)]
pub struct Communities {
    pub groups: u32,
    pub group_size: u32,
    pub edges: usize,
    /// Zipf exponent of the group popularity.
    pub skew: f64,
    /// Consecutive edges sharing one timestamp.
    pub ties: u32,
    pub seed: u64,
}

impl Default for Communities {
    fn default() -> Self {
        Communities { groups: 20_000, group_size: 6, edges: 1_000_000, skew: 1.2, ties: 2, seed: 1 }
    }
}

/// Edges inside small disjoint vertex groups. Each edge picks a group with
/// Zipf-distributed popularity and two distinct members uniformly; timestamps
/// advance by one every `ties` edges. Since a group's vertices never touch
/// other groups, any match lies inside one group and every time window holds
/// a bounded number of edges, which keeps exact counting cheap while the
/// degree distribution stays heavily skewed.
pub fn community_edges(p: &Communities) -> Result<Vec<(VertexId, VertexId, Timestamp)>> {
    if p.groups == 0 || p.group_size < 2 || p.ties == 0 {
        return Err(Error::InvalidArgument("need groups >= 1, group_size >= 2 and ties >= 1".into()));
    }
    let zipf = Zipf::new(p.groups as f64, p.skew).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let s = p.group_size;
    Ok((0..p.edges)
        .map(|i| {
            let group = zipf.sample(&mut rng) as u32 - 1;
            let a = rng.random_range(0..s);
            let mut b = rng.random_range(0..s - 1);
            if b >= a {
                b += 1;
            }
            (group * s + a, group * s + b, (i / p.ties as usize) as Timestamp)
        })
        .collect())
}

pub fn community_graph(p: &Communities) -> Result<TemporalGraph> {
    TemporalGraph::from_edges(community_edges(p)?)
}
