//! Compares the exact backtracking count with the sampled estimate for every
//! preset motif.
//!
//!     cargo run --release --example exact_vs_estimate

use temporal_motifs::motif::TieMode;
use temporal_motifs::synth::{community_graph, Communities};
use temporal_motifs::{exact_count, Estimator, Motif};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = community_graph(&Communities { groups: 500, group_size: 5, edges: 30_000, ..Default::default() })?;
    let delta = 300;
    println!("{:<6} {:>10} {:>12} {:>8}", "motif", "exact", "estimate", "error");
    for name in Motif::preset_names() {
        let motif = Motif::preset(name).unwrap();
        let exact = exact_count(&g, &motif, delta, TieMode::Strict, u64::MAX)?;
        let r = Estimator::new(&g, &motif, delta, TieMode::Strict)?.run(100_000, 5, 1)?;
        let err = if exact == 0 { 0.0 } else { (r.estimate - exact as f64).abs() / exact as f64 };
        println!("{name:<6} {exact:>10} {:>12.1} {err:>8.4}", r.estimate);
    }
    Ok(())
}
