//! Lists the preset motifs with the anchor and extension plan the counter
//! uses for each, and parses a motif from text.
//!
//!     cargo run --example motif_presets

use temporal_motifs::{build_extension_plan, choose_anchor, Motif};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in Motif::preset_names() {
        let m = Motif::preset(name).unwrap();
        let anchor = choose_anchor(&m)?;
        let plan = build_extension_plan(&m, &anchor);
        println!("{name:<6} {m}");
        println!("       anchor {} at positions {:?}", anchor.class, anchor.positions);
        for step in &plan.steps {
            println!("       position {} between anchor positions {} and {:?}", step.position, step.below, step.above);
        }
    }
    // one edge per line, in time order
    let custom = Motif::parse("0 1\n1 2\n2 0\n0 1\n")?;
    println!("custom {custom}: anchor {}", choose_anchor(&custom)?.class);
    Ok(())
}
