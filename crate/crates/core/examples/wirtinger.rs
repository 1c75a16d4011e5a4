//! Read a diagram and extract its group with peripheral words.
//!
//! Run with `cargo run --example wirtinger [FILE.hld]`; the bundled HL1
//! diagram is used by default.

use ftree::abelian::abelian_invariants;
use ftree::diagram::{parse_diagram, render_with_peripherals, wirtinger};
use ftree::group::simplify;

fn main() -> ftree::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/hl1.hld").to_string());
    let text = std::fs::read_to_string(&path)?;
    let d = parse_diagram(&text)?;
    for (i, c) in d.components.iter().enumerate() {
        println!("component {} has {} arcs and spine genus {}", c.name, c.arcs.len(), d.spine_genus(i));
    }
    let (p, ext) = wirtinger(&d)?;
    println!("{} generators, {} relators; H1 = {}", p.generator_count(), p.relators().len(), abelian_invariants(&p));

    let rw = simplify(&p)?;
    let mut ext = ext;
    for c in &mut ext.components {
        c.meridians = c.meridians.iter().map(|w| rw.map_word(w)).collect();
        c.longitudes = c.longitudes.iter().map(|w| rw.map_word(w)).collect();
    }
    print!("{}", render_with_peripherals(&rw.presentation, &ext));
    Ok(())
}
