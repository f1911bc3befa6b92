//! Finite bounded distributive lattices, algebras over a base lattice, their
//! spectra, and finite sites.
//!
//! The crate is organised bottom-up:
//!
//! - [`poset`]: finite posets, monotone maps, limits and colimits.
//! - [`lattice`]: lattices given by tables, Birkhoff representation,
//!   homomorphisms and congruence quotients.
//! - [`algebra`]: algebras over a base lattice `D`, presentations, spectra.
//! - [`polynomial`]: polynomial normal forms and chain quotients.
//! - [`domain`]: slices, lifts, simplices, and sequence constructions.
//! - [`site`]: coverages on finite posets and sheaf checks.
//! - [`suite`]: the verification battery used by the command line.
//!
//! Every enumeration is bounded by a [`Budget`].

pub mod algebra;
mod bits;
pub mod budget;
pub mod corpus;
mod diagram;
pub mod domain;
pub mod error;
pub mod lattice;
pub mod polynomial;
pub mod poset;
pub mod site;
pub mod suite;

pub use budget::Budget;
pub use error::{LatspecError, Result};
pub use lattice::{DLattice, LatticeHom};
pub use poset::{MonotoneMap, Poset};
