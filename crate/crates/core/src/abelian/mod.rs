//! Integer linear algebra for first homology.

mod invariants;
mod matrix;
mod pairing;

pub use invariants::{abelian_invariants, relation_matrix, AbelianInvariants};
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use pairing::{preserves_pairing, standard_symplectic, PairingForm};
