mod common;

use std::collections::HashMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use temporal_motifs::motif::{ArmSpec, Direction, End, TimeSide, WedgeClass};
use temporal_motifs::sampler::GROUP;
use temporal_motifs::synth::uniform_edges;
use temporal_motifs::{enumerate_paths, preprocess, SampledPath, SamplingClass, TemporalGraph};

use common::small_graph;

/// Chi-square p-value of `draws` against the uniform distribution over
/// `population`. Panics on a draw outside the population.
fn uniformity_p_value(population: &[SampledPath], draws: &[SampledPath]) -> f64 {
    let index: HashMap<_, _> = population.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut observed = vec![0u64; population.len()];
    for d in draws {
        observed[*index.get(d).expect("draw outside the class")] += 1;
    }
    let expected = draws.len() as f64 / population.len() as f64;
    let stat: f64 = observed.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    ChiSquared::new((population.len() - 1) as f64).unwrap().sf(stat)
}

#[test]
fn weight_total_equals_enumeration_for_every_class() {
    for seed in 0..40 {
        let g = small_graph(8 + seed as u32 % 5, 150, 60, seed);
        for class in SamplingClass::all() {
            for delta in [0, 3, 10, 60] {
                let table = preprocess(&g, class, delta).unwrap();
                let paths = enumerate_paths(&g, class, delta, u64::MAX).unwrap();
                assert_eq!(table.total(), paths.len() as u128, "{class} seed {seed} delta {delta}");
                let mut per_center = vec![0u64; g.num_edges()];
                for p in &paths {
                    per_center[p.center() as usize] += 1;
                    assert!(p.is_member(&g, &class, delta));
                }
                assert_eq!(table.weights(), per_center.as_slice());
            }
        }
    }
}

#[test]
fn empty_graph_has_no_paths() {
    let g = TemporalGraph::from_edges(Vec::new()).unwrap();
    for class in SamplingClass::all() {
        assert_eq!(preprocess(&g, class, 10).unwrap().total(), 0);
        assert!(enumerate_paths(&g, class, 10, 10).unwrap().is_empty());
    }
}

#[test]
fn sampler_is_uniform() {
    let mut tested = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for seed in 0.. {
        if tested == 10 {
            break;
        }
        let g = small_graph(10, 60, 100, seed);
        let class = SamplingClass::all().nth(seed as usize % 24).unwrap();
        let table = preprocess(&g, class, 15).unwrap();
        if !(4..=50).contains(&table.total()) {
            continue;
        }
        let population = enumerate_paths(&g, class, 15, 1000).unwrap();
        let draws: Vec<_> = (0..100_000).map(|_| table.sample(&g, &mut rng).unwrap()).collect();
        let p = uniformity_p_value(&population, &draws);
        assert!(p > 1e-3, "{class} seed {seed}: p = {p}");
        tested += 1;
    }
}

#[test]
fn group_sampler_is_uniform() {
    let mut tested = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    let mut draws = Vec::new();
    let mut group = Vec::new();
    for seed in 100.. {
        if tested == 10 {
            break;
        }
        let g = small_graph(10, 60, 100, seed);
        let class = SamplingClass::all().nth(seed as usize % 24).unwrap();
        let table = preprocess(&g, class, 15).unwrap();
        if !(4..=50).contains(&table.total()) {
            continue;
        }
        let population = enumerate_paths(&g, class, 15, 1000).unwrap();
        draws.clear();
        for i in 0..10_000 {
            table.sample_group(&g, &mut rng, 1 + i % GROUP, &mut group);
            for d in &group {
                assert_eq!(g.edge(d.center.id), &d.center);
                for a in d.arm_edges() {
                    assert_eq!(g.edge(a.id), a);
                }
                draws.push(d.path());
            }
        }
        let p = uniformity_p_value(&population, &draws);
        assert!(p > 1e-3, "{class} seed {seed}: p = {p}");
        tested += 1;
    }
}

#[test]
fn g2_paths_are_equally_likely() {
    let g = TemporalGraph::from_edges([(1, 2, 10), (1, 2, 12), (2, 3, 20), (3, 4, 28), (3, 5, 29)]).unwrap();
    let class: SamplingClass = "path<in,out,before,after>".parse().unwrap();
    let table = preprocess(&g, class, 20).unwrap();
    let population = enumerate_paths(&g, class, 20, 100).unwrap();
    assert_eq!(population.len(), 4);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let draws: Vec<_> = (0..20_000).map(|_| table.sample(&g, &mut rng).unwrap()).collect();
    assert!(uniformity_p_value(&population, &draws) > 1e-3);
}

#[test]
fn star_wedges_are_equally_likely() {
    let g = TemporalGraph::from_edges([(1, 2, 10), (2, 3, 11), (2, 4, 12), (2, 5, 13)]).unwrap();
    let class = SamplingClass::Wedge(WedgeClass {
        pivot: End::Dst,
        spoke: ArmSpec { dir: Direction::Out, time: TimeSide::After },
    });
    let table = preprocess(&g, class, 5).unwrap();
    assert_eq!(table.weights(), [3, 0, 0, 0]);
    let population = enumerate_paths(&g, class, 5, 100).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let draws: Vec<_> = (0..30_000).map(|_| table.sample(&g, &mut rng).unwrap()).collect();
    assert!(uniformity_p_value(&population, &draws) > 1e-3);
}

#[test]
fn temporal_queries_match_linear_scan() {
    let g = small_graph(15, 400, 200, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let edges = g.edges();
    for _ in 0..1000 {
        let v = rng.random_range(0..15u32);
        let w = rng.random_range(0..15u32);
        let lo = rng.random_range(-10..210i64);
        let hi = lo + rng.random_range(0..80i64);
        let scan = |f: &dyn Fn(&temporal_motifs::TemporalEdge) -> bool| edges.iter().filter(|e| f(e) && lo <= e.t && e.t <= hi).count();
        let out = scan(&|e| e.src == v);
        let inn = scan(&|e| e.dst == v);
        assert_eq!(g.out_degree(v, lo, hi), out);
        assert_eq!(g.out_slice(v, lo, hi).len(), out);
        assert_eq!(g.in_degree(v, lo, hi), inn);
        assert_eq!(g.in_slice(v, lo, hi).len(), inn);
        assert_eq!(g.multiplicity(v, w, lo, hi), scan(&|e| e.src == v && e.dst == w));
        for inclusive in [false, true] {
            let got: Vec<i64> = g.pair_slice(v, w, lo, hi, inclusive).iter().map(|a| a.t).collect();
            let want: Vec<i64> = edges
                .iter()
                .filter(|e| e.src == v && e.dst == w && e.t > lo && (e.t < hi || inclusive && e.t == hi))
                .map(|e| e.t)
                .collect();
            assert_eq!(got, want);
        }
    }
}

#[test]
fn graph_build_is_deterministic() {
    let edges = uniform_edges(30, 2000, 100, 9);
    let a = TemporalGraph::from_edges(edges.clone()).unwrap();
    let b = TemporalGraph::from_edges(edges).unwrap();
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
}

proptest! {
    #[test]
    fn degrees_are_monotone_and_sum_to_m(seed in 0u64..1000, lo in 0i64..50, grow in 0i64..50, v in 0u32..10) {
        let g = small_graph(10, 120, 100, seed);
        let total: usize = (0..10).map(|u| g.out_degree(u, i64::MIN, i64::MAX)).sum();
        prop_assert_eq!(total, g.num_edges());
        let hi = lo + 20;
        prop_assert!(g.out_degree(v, lo, hi) <= g.out_degree(v, lo - grow, hi + grow));
        prop_assert!(g.in_degree(v, lo, hi) <= g.in_degree(v, lo - grow, hi + grow));
        prop_assert!(g.multiplicity(v, (v + 1) % 10, lo, hi) <= g.multiplicity(v, (v + 1) % 10, lo - grow, hi + grow));
    }

    #[test]
    fn sampled_paths_are_class_members(seed in 0u64..1000, class_idx in 0usize..24, delta in 0i64..40) {
        let g = small_graph(8, 80, 60, seed);
        let class = SamplingClass::all().nth(class_idx).unwrap();
        let table = preprocess(&g, class, delta).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match table.sample(&g, &mut rng) {
            None => prop_assert_eq!(table.total(), 0),
            Some(p) => prop_assert!(p.is_member(&g, &class, delta)),
        }
    }
}
