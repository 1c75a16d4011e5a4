//! A4-images of the bundled two-component handlebody links.
//!
//! Run with `cargo run --release --example g_image`.

use ftree::cli::load_link;
use ftree::finite::FiniteGroup;
use ftree::fundtree::{compare_g_images, surjection_census, CompareScope, GImageOptions};
use std::path::PathBuf;

fn main() -> ftree::Result<()> {
    let a4: FiniteGroup = "A4".parse()?;
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut profiles = Vec::new();
    for name in ["hl1", "hl2", "hl3"] {
        let link = load_link(&data.join(format!("{name}.hld")))?;
        let census = surjection_census(&link, &a4, GImageOptions::default())?;
        for fold in [1, 2] {
            for report in census.profile(fold)?.reports {
                print!("{}", report.render_table());
            }
        }
        profiles.push((name, census.profile(1)?, census.profile(2)?));
    }
    for i in 0..profiles.len() {
        for j in i + 1..profiles.len() {
            let (a, a1, a2) = &profiles[i];
            let (b, b1, b2) = &profiles[j];
            println!(
                "{a} vs {b}: individual {}, 2-fold {}",
                compare_g_images(a1, b1, CompareScope::Kernel)?,
                compare_g_images(a2, b2, CompareScope::Kernel)?
            );
        }
    }
    Ok(())
}
