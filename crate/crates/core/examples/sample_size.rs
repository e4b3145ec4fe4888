//! Picks the sample count for a target accuracy: a pilot run estimates the
//! count, the concentration bound turns it into a sample size, and the run
//! is topped up to that size.
//!
//!     cargo run --release --example sample_size [eps] [gamma]

use temporal_motifs::motif::TieMode;
use temporal_motifs::synth::{community_graph, Communities};
use temporal_motifs::{exact_count, required_samples, two_phase, Estimator, Motif};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let eps: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0.1);
    let gamma: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0.05);

    let g = community_graph(&Communities { groups: 2_000, edges: 100_000, ..Default::default() })?;
    let motif = Motif::preset("M4-0").unwrap();
    let delta = 200;
    let est = Estimator::new(&g, &motif, delta, TieMode::Strict)?;

    let tp = two_phase(&est, 1 << 14, eps, gamma, 1 << 26, 3, 1)?;
    println!("pilot: k = {}, estimate {:.1}", tp.pilot.k, tp.pilot.estimate);
    println!("bound: sigma = {}, r = {}, required k = {}", tp.sigma, tp.r, tp.required);
    println!("final: k = {}, estimate {:.1}", tp.report.k, tp.report.estimate);

    let exact = exact_count(&g, &motif, delta, TieMode::Strict, u64::MAX)?;
    println!("exact {exact}, relative error {:.4}", (tp.report.estimate - exact as f64).abs() / exact as f64);
    let with_truth = required_samples(tp.report.w_delta, exact as f64, tp.sigma, tp.r, eps, gamma)?;
    println!("k the bound asks for given the true count: {with_truth}");
    Ok(())
}
