//! Concrete finite groups as multiplication tables.

mod auto;
mod group;
mod iso;
mod subgroup;

pub use auto::{automorphism_group, inner_automorphisms, Automorphism, MAX_AUT_GROUP_ORDER};
pub use group::{Elem, FiniteGroup, GroupSpec, MAX_PERM_DEGREE, MAX_TABLE_ORDER};
pub use iso::{iso_class, IsoClassLabel, MAX_LABELED_ORDER};
pub use subgroup::{normal_closure_within, subgroup_closure, Subgroup};
