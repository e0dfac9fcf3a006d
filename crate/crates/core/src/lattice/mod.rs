//! Finite bounded posets, lattices and orthocomplemented lattices.
//!
//! Elements are identified by their declaration index. Names are carried for
//! display only. Every structure is immutable once built, and all order and
//! lattice queries are table lookups.

mod ortho;
mod poset;
mod table;

pub use ortho::{attach_ortho, OrthoLattice, OrthoPoset, OrthoViolation};
pub use poset::{build_poset, Poset};
pub use table::{lattice_check, BoundKind, Lattice, LatticeFailure};

use std::fmt;

use thiserror::Error;

/// Hard cap on the number of elements of any lattice or poset.
pub const MAX_ELEMENTS: usize = 4096;

/// Stable index of an element in declaration order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(u32);

impl ElementId {
    #[inline]
    pub fn new(index: usize) -> Self {
        ElementId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(index: usize) -> Self {
        ElementId::new(index)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a bounded poset needs at least two elements (bottom and top must differ)")]
    Degenerate,
    #[error("{size} elements exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("element `{0}` declared twice")]
    DuplicateElement(String),
    #[error("element index {0} is out of range")]
    UnknownElement(usize),
    #[error("element `{0}` covers itself")]
    SelfCover(String),
    #[error("order cycle: `{0}` and `{1}` are mutually below each other")]
    CycleDetected(String, String),
    #[error("`{element}` is not a global {bound}: `{witness}` is not comparable in the required direction")]
    NotBounded {
        bound: &'static str,
        element: String,
        witness: String,
    },
    #[error("no global {0} exists")]
    NoBound(&'static str),
    #[error("not a lattice: {0}")]
    NotALattice(LatticeFailure),
    #[error("orthocomplement axioms fail ({} violation(s), first: {})", .0.len(), .0[0])]
    NotOrthocomplemented(Vec<OrthoViolation>),
}

#[cfg(test)]
pub(crate) mod testing {
    pub fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }
}
