//! Homomorphisms from finitely presented groups to finite groups.

mod classify;
mod enumerate;
mod plan;

pub use classify::{classify, classify_with, mode_automorphisms, ClassifyMode, HomOrbit};
pub use enumerate::{
    count_homomorphisms, enumerate_homomorphisms, is_surjective, restrict_along, Homomorphism, SearchOptions,
    DEFAULT_NODE_BUDGET,
};
pub use plan::{plan_search, SearchPlan};

use crate::error::Result;
use crate::finite::FiniteGroup;
use crate::group::Presentation;

/// Plan and enumerate in one step.
pub fn all_homomorphisms(p: &Presentation, g: &FiniteGroup, opts: SearchOptions) -> Result<Vec<Homomorphism>> {
    enumerate_homomorphisms(p, g, &plan_search(p), opts)
}
