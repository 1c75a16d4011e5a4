//! Count homomorphisms onto small finite groups and sort them into orbits.
//!
//! Run with `cargo run --example homomorphisms`.

use ftree::finite::FiniteGroup;
use ftree::group::format;
use ftree::homs::{all_homomorphisms, classify, is_surjective, ClassifyMode, SearchOptions};

fn main() -> ftree::Result<()> {
    let trefoil = format::parse_text("gens: x, y\nrel: x y x Y X Y\n")?;
    for spec in ["Z6", "S3", "A4", "perm:(1 2 3 4 5),(1 2)"] {
        let g: FiniteGroup = spec.parse()?;
        let homs = all_homomorphisms(&trefoil, &g, SearchOptions::default())?;
        let onto: Vec<_> = homs.iter().filter(|h| is_surjective(h, &g)).cloned().collect();
        print!("{:<24} |Hom| = {:<4} onto = {:<4}", g.name(), homs.len(), onto.len());
        for mode in [ClassifyMode::Conjugation, ClassifyMode::Automorphism] {
            print!(" {mode}-orbits = {}", classify(&onto, &g, mode)?.len());
        }
        println!();
    }

    let a4: FiniteGroup = "A4".parse()?;
    let onto: Vec<_> = all_homomorphisms(&trefoil, &a4, SearchOptions::default())?
        .into_iter()
        .filter(|h| is_surjective(h, &a4))
        .collect();
    for orbit in classify(&onto, &a4, ClassifyMode::Automorphism)? {
        let images: Vec<String> = orbit.representative.images.iter().map(|&e| a4.element_label(e)).collect();
        println!("A4 orbit of size {}: x -> {}, y -> {}", orbit.size, images[0], images[1]);
    }
    Ok(())
}
