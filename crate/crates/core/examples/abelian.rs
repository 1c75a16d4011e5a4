//! Smith normal form, abelianization and intersection forms.
//!
//! Run with `cargo run --example abelian`.

use ftree::abelian::{abelian_invariants, preserves_pairing, smith_normal_form, standard_symplectic, IntMatrix};
use ftree::group::{format, Presentation};

fn main() -> ftree::Result<()> {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])?;
    let snf = smith_normal_form(&m);
    println!("M =\n{m}");
    println!("D = U M V =\n{}", snf.d);
    println!("invariant factors: {:?}", snf.invariant_factors());
    assert_eq!(&(&snf.u * &m) * &snf.v, snf.d);

    for (name, p) in [
        ("trefoil", format::parse_text("gens: x, y\nrel: x y x Y X Y\n")?),
        ("Z/2 * Z/3", format::parse_text("gens: a, b\nrel: a a\nrel: b b b\n")?),
        ("genus-2 surface", Presentation::surface_group(2)),
    ] {
        println!("{name:<16} H1 = {}", abelian_invariants(&p));
    }

    // A symplectic change of basis of a genus-2 surface: a transvection.
    let j = standard_symplectic(2);
    let t = IntMatrix::from_rows(&[vec![1, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]])?;
    println!("transvection preserves the form: {}", preserves_pairing(&t, &j, &j)?);
    let s = IntMatrix::from_rows(&[vec![2, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]])?;
    println!("scaling preserves the form: {}", preserves_pairing(&s, &j, &j)?);
    Ok(())
}
