//! Fundamental trees, handlebody links and their finite-group images.

mod gimage;
mod link;
mod tree;

pub use gimage::{
    compare_g_images, g_image, is_proper, kernel_image, peripheral_image, surjection_census, Breakdown, CompareScope,
    GImageEntry, GImageOptions, GImageProfile, GImageReport, SurjectionCensus, SurjectionOrbit, Verdict,
};
pub use link::{ComponentJson, HandlebodyLink, LinkJson, PeripheralComponent};
pub use tree::{graft_fundtree, handlebody_groups, link_to_fundtree, EdgeData, Fingerprint, FundTree};
