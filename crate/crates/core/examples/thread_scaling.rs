//! Runs the same estimate on several thread counts. The result does not
//! depend on the thread count; only the wall time does.
//!
//!     cargo run --release --example thread_scaling

use std::time::Instant;

use temporal_motifs::motif::TieMode;
use temporal_motifs::synth::{community_graph, Communities};
use temporal_motifs::{exact_count_parallel, Estimator, Motif};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = community_graph(&Communities { groups: 5_000, edges: 200_000, seed: 11, ..Default::default() })?;
    let motif = Motif::preset("M4-0").unwrap();
    let est = Estimator::new(&g, &motif, 200, TieMode::Strict)?;
    for threads in [1, 2, 4] {
        let start = Instant::now();
        let r = est.run(500_000, 42, threads)?;
        println!("{threads} threads: estimate {} in {:.3} s", r.estimate, start.elapsed().as_secs_f64());
    }
    for threads in [1, 4] {
        let start = Instant::now();
        let c = exact_count_parallel(&g, &motif, 200, TieMode::Strict, u64::MAX, threads)?;
        println!("exact on {threads} threads: {c} in {:.3} s", start.elapsed().as_secs_f64());
    }
    Ok(())
}
