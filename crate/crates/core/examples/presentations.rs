//! Parse a presentation, apply Tietze moves and simplify it.
//!
//! Run with `cargo run --example presentations`.

use ftree::group::{format, simplify, tietze_move, TietzeMove};

fn main() -> ftree::Result<()> {
    // Wirtinger presentation of the trefoil, one relator redundant.
    let p = format::parse_text(
        "gens: a, b, c\n\
         rel: c a C B\n\
         rel: a b A C\n\
         rel: b c B A\n",
    )?;
    println!("input:\n{p}");

    let grown = tietze_move(&p, TietzeMove::AddGeneratorWithDefinition, 7)?;
    println!("after adding a defined generator:\n{}", grown.presentation);

    let small = simplify(&grown.presentation)?;
    println!("simplified:\n{}", small.presentation);

    // Words follow the presentation through every move.
    let composed = grown.then(small);
    let a = p.word(&[1])?;
    println!("a becomes {}", composed.map_word(&a).display_with(composed.presentation.names()));
    println!("json: {}", format::to_json(&composed.presentation));
    Ok(())
}
