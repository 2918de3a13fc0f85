//! Finite quandles and their quandle rings over exact coefficient domains.
//!
//! The crate builds quandles from the standard families, computes the groups
//! and semigroups their translations generate, enumerates small quandles,
//! and works with the quandle ring `k[X]`: power associativity, ring
//! isomorphisms, augmentation-ideal filtrations and decompositions into
//! right ideals.

pub mod cli;
pub mod dihedral;
pub mod error;
pub mod lattice;
pub mod quandle;
pub mod ring;
pub mod symmetry;

pub use error::{Error, Result};
pub use quandle::Quandle;
