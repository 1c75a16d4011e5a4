//! Depth trees: based versus unbased equivalence.
//!
//! A thickened torus and a neighborhood of the Hopf link both have three
//! solid parts separated by two tori, but the region at infinity sits in a
//! different place.
//!
//! Run with `cargo run --example depth_trees`.

use ftree::tree::{are_isomorphic, are_isomorphic_unbased, canonical_code, star_decomposition, subdivision, unbased_code, BasedTree};

fn main() -> ftree::Result<()> {
    // Outside, shell, inner solid torus.
    let shell = BasedTree::from_edges(&[(0, 1), (1, 1)])?;
    // Outside, two solid tori.
    let hopf = BasedTree::from_edges(&[(0, 1), (0, 1)])?;

    for (name, t) in [("toric shell", &shell), ("Hopf", &hopf)] {
        println!("{name:<12} based: {:<14} unbased: {}", canonical_code(t).as_str(), unbased_code(t).as_str());
    }
    println!("based isomorphic:   {}", are_isomorphic(&shell, &hopf));
    println!("unbased isomorphic: {}", are_isomorphic_unbased(&shell, &hopf));

    let sd = subdivision(&hopf);
    println!("subdivision of the Hopf tree has {} nodes, barycenters {:?}", sd.node_count(), sd.barycenters());
    for star in star_decomposition(&shell) {
        println!("star at node {} with {} edges", star.center, star.edges.len());
    }
    println!("json: {}", shell.to_json());
    Ok(())
}
