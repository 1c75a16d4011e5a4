//! Based edge-labeled trees.

mod based;
mod canon;
mod ops;

pub use based::BasedTree;
pub use canon::{are_isomorphic, are_isomorphic_unbased, canonical_code, unbased_code, CanonicalCode};
pub use ops::{join, star_decomposition, subdivision, BaryDiagram, Star};
