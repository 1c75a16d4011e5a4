//! Invariants of surfaces and handlebody links in the 3-sphere.
//!
//! The crate is organized bottom-up:
//!
//! * [`group`]: words, finitely presented groups, Tietze moves.
//! * [`finite`]: finite groups as tables, subgroups, automorphisms.
//! * [`homs`]: enumeration and classification of homomorphisms onto finite groups.
//! * [`abelian`]: Smith normal form, abelianization, intersection forms.
//! * [`tree`]: based edge-labeled trees and their canonical forms.
//! * [`fundtree`]: fundamental trees, peripheral systems and finite-group images.
//! * [`diagram`]: diagram codes of links and spatial graphs, Wirtinger presentations.
//! * [`cli`]: the `ftree` command line.

pub mod abelian;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod finite;
pub mod fundtree;
pub mod group;
pub mod homs;
pub mod tree;

pub use error::{Error, Result};
