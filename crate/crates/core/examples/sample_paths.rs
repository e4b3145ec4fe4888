//! Builds the weight table for one sampling class and draws paths from it.
//!
//!     cargo run --release --example sample_paths

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use temporal_motifs::synth::uniform_graph;
use temporal_motifs::{enumerate_paths, preprocess, SamplingClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = uniform_graph(50, 2_000, 1_000, 7);
    let delta = 40;
    for class in SamplingClass::all().step_by(5) {
        let table = preprocess(&g, class, delta)?;
        println!("{class}: W = {}", table.total());
    }

    let class: SamplingClass = "path<in,out,before,after>".parse()?;
    let table = preprocess(&g, class, delta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("\n{class}, W = {}", table.total());
    for _ in 0..5 {
        let Some(p) = table.sample(&g, &mut rng) else { break };
        let (arms, n) = p.arms();
        let edges: Vec<_> = arms[..n].iter().map(|&id| g.edge(id)).collect();
        println!("  center {:?}, arms {:?}", g.edge(p.center()), edges);
    }
    let all = enumerate_paths(&g, class, delta, 1_000_000)?;
    assert_eq!(all.len() as u128, table.total());
    println!("enumeration agrees: {} paths", all.len());
    Ok(())
}
