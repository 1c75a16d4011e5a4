//! Build fundamental trees of handlebody links and graft them together.
//!
//! Run with `cargo run --example fundamental_tree`.

use ftree::cli::load_link;
use ftree::fundtree::{graft_fundtree, Fingerprint, handlebody_groups, link_to_fundtree};
use std::path::PathBuf;

fn main() -> ftree::Result<()> {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let hopf = load_link(&data.join("hopf.hld"))?;
    let hl1 = load_link(&data.join("hl1.hld"))?;

    let t_hopf = link_to_fundtree(&hopf, &handlebody_groups(&hopf))?;
    let t_hl1 = link_to_fundtree(&hl1, &handlebody_groups(&hl1))?;
    for (name, t) in [("Hopf", &t_hopf), ("HL1", &t_hl1)] {
        let f = t.fingerprint();
        println!("{name:<6} shape {} genera {:?} node H1 [{}]", f.shape.as_str(), f.genera, h1(&f));
    }

    // Place the Hopf link inside the first handlebody of HL1.
    let grafted = graft_fundtree(&t_hl1, 1, &t_hopf)?;
    let f = grafted.fingerprint();
    println!("graft  shape {} genera {:?} node H1 [{}]", f.shape.as_str(), f.genera, h1(&f));
    println!("compatible with HL1: {}", f.compatible(&t_hl1.fingerprint()));
    Ok(())
}

fn h1(f: &Fingerprint) -> String {
    f.node_h1.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", ")
}
