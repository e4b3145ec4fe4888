//! Loads an edge list and runs the temporal adjacency queries the sampler
//! and counter are built on.
//!
//!     cargo run --example load_and_query [path/to/edges.txt]

use std::io::Write;

use temporal_motifs::{load_graph, EdgeFormat, LoadOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = match std::env::args().nth(1) {
        Some(p) => p.into(),
        None => {
            let path = std::env::temp_dir().join("tmotif-load-example.txt");
            let mut f = std::fs::File::create(&path)?;
            writeln!(f, "# src dst t")?;
            for (u, v, t) in [(10, 20, 5), (20, 30, 7), (10, 20, 9), (30, 10, 12), (20, 10, 15)] {
                writeln!(f, "{u} {v} {t}")?;
            }
            path
        }
    };
    let g = load_graph(&path, EdgeFormat::Whitespace, &LoadOptions::default())?;
    println!("{} vertices, {} edges, time range {:?}", g.num_vertices(), g.num_edges(), g.time_range());
    for e in g.edges() {
        println!("  edge {}: {} -> {} at {}", e.id, g.label(e.src), g.label(e.dst), e.t);
    }
    // vertex ids are dense; labels map back to the file
    let v = 0;
    println!("out-degree of {} in [0, 10]: {}", g.label(v), g.out_degree(v, 0, 10));
    println!("in-degree of {} in [0, 20]: {}", g.label(v), g.in_degree(v, 0, 20));
    println!("multiplicity {}->{} over all time: {}", g.label(0), g.label(1), g.multiplicity(0, 1, i64::MIN, i64::MAX));
    Ok(())
}
