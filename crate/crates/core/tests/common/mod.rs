#![allow(dead_code)]

use std::collections::HashMap;

use temporal_motifs::graph::EdgeId;
use temporal_motifs::motif::{Anchor, TieMode};
use temporal_motifs::synth::uniform_edges;
use temporal_motifs::{Motif, SampledPath, TemporalGraph, Timestamp};

/// All matches as edge-id tuples in motif order, by trying every injective
/// vertex map and every edge tuple on the mapped pairs. Uses only the edge
/// array.
pub fn brute_matches(g: &TemporalGraph, motif: &Motif, delta: Timestamp, ties: TieMode) -> Vec<Vec<EdgeId>> {
    let n = g.num_vertices() as u32;
    let nv = motif.num_vertices();
    let mut out = Vec::new();
    let mut phi = vec![0u32; nv];
    maps(0, n, &mut phi, &mut |phi| {
        let lists: Vec<Vec<EdgeId>> = motif
            .edges()
            .iter()
            .map(|&(a, b)| {
                g.edges()
                    .iter()
                    .filter(|e| e.src == phi[a as usize] && e.dst == phi[b as usize])
                    .map(|e| e.id)
                    .collect()
            })
            .collect();
        let mut chosen = Vec::new();
        tuples(g, &lists, delta, ties, &mut chosen, &mut out);
    });
    out
}

fn maps(i: usize, n: u32, phi: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if i == phi.len() {
        f(phi);
        return;
    }
    for v in 0..n {
        if phi[..i].contains(&v) {
            continue;
        }
        phi[i] = v;
        maps(i + 1, n, phi, f);
    }
}

fn tuples(
    g: &TemporalGraph,
    lists: &[Vec<EdgeId>],
    delta: Timestamp,
    ties: TieMode,
    chosen: &mut Vec<EdgeId>,
    out: &mut Vec<Vec<EdgeId>>,
) {
    let p = chosen.len();
    if p == lists.len() {
        out.push(chosen.clone());
        return;
    }
    for &id in &lists[p] {
        let e = g.edge(id);
        if let Some(&last) = chosen.last() {
            let prev = g.edge(last);
            let ordered = match ties {
                TieMode::Strict => prev.t < e.t,
                TieMode::Lenient => (prev.t, prev.id) < (e.t, e.id),
            };
            if !ordered || e.t - g.edge(chosen[0]).t > delta {
                continue;
            }
        }
        chosen.push(id);
        tuples(g, lists, delta, ties, chosen, out);
        chosen.pop();
    }
}

/// The anchor image of a match.
pub fn anchor_image(anchor: &Anchor, m: &[EdgeId]) -> SampledPath {
    let center = m[anchor.center];
    match anchor.arms.as_slice() {
        [a, b] => SampledPath::Path3 { first: m[a.position], center, last: m[b.position] },
        [a] => SampledPath::Wedge { base: center, spoke: m[a.position] },
        _ => unreachable!("anchors have one or two arms"),
    }
}

/// Brute-force matches grouped by anchor image.
pub fn brute_by_anchor(
    g: &TemporalGraph,
    motif: &Motif,
    anchor: &Anchor,
    delta: Timestamp,
    ties: TieMode,
) -> HashMap<SampledPath, u128> {
    let mut by = HashMap::new();
    for m in brute_matches(g, motif, delta, ties) {
        *by.entry(anchor_image(anchor, &m)).or_insert(0) += 1;
    }
    by
}

/// Random graph with few vertices and coarse timestamps, so ties and parallel
/// edges are common.
pub fn small_graph(n: u32, m: usize, t_max: Timestamp, seed: u64) -> TemporalGraph {
    TemporalGraph::from_edges(uniform_edges(n, m, t_max, seed)).unwrap()
}

pub fn presets() -> Vec<(&'static str, Motif)> {
    Motif::preset_names().map(|n| (n, Motif::preset(n).unwrap())).collect()
}

/// Four-cycle walkthrough graph: one valid match, a reversed edge, a late
/// (1,2) edge and a closing edge 190 after the first.
pub fn walkthrough() -> TemporalGraph {
    TemporalGraph::from_edges([
        (0, 1, 10),
        (1, 2, 20),
        (3, 2, 30),
        (2, 3, 40),
        (3, 0, 60),
        (1, 2, 80),
        (3, 0, 200),
    ])
    .unwrap()
}
