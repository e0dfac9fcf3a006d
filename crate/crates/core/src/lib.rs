//! Finite event lattices, axiom-ladder classification and the generalized
//! probability measures (states) they carry.
//!
//! The crate is organised as a pipeline: build or parse a lattice
//! ([`lattice`], [`builders`], [`io`]), classify it ([`classify`]), then derive
//! and check states ([`state`]). [`hilbert`] realizes finite fragments of the
//! lattice of subspaces of a finite-dimensional complex inner-product space,
//! and [`cox`] checks the functional equations behind additive measures.

pub mod builders;
pub mod classify;
pub mod cox;
pub mod hilbert;
pub mod io;
pub mod lattice;
pub mod number;
pub mod state;

pub use lattice::{ElementId, Lattice, LatticeError, OrthoLattice, OrthoPoset, Poset};
