//! Finite-dimensional realization of the lattice of closed subspaces:
//! subspaces and their projectors, density matrices, Born-rule valuations and
//! finite sublattices generated by a handful of seed subspaces.
//!
//! All arithmetic is complex `f64`. Two tolerances are used throughout:
//! [`RANK_TOL`] (relative to the largest singular value) to decide ranks and
//! orthonormality, and [`PROJECTOR_TOL`] on the Frobenius distance of
//! projectors to decide equality and inclusion of subspaces.

mod density;
mod sublattice;
mod subspace;

pub use density::{born, born_valuation, resolution_check, spectral_projectors, DensityMatrix, ResolutionReport};
pub use sublattice::{generate_sublattice, GeneratedLattice, DEFAULT_CAP};
pub use subspace::{join_s, meet_s, ortho_s, subspace_from_vectors, Subspace};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::lattice::LatticeError;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Largest supported ambient dimension.
pub const MAX_DIMENSION: usize = 8;
pub const RANK_TOL: f64 = 1e-10;
pub const PROJECTOR_TOL: f64 = 1e-8;
/// Slack allowed when clamping Born probabilities into `[0, 1]`.
pub const BORN_CLAMP: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HilbertError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {0} is outside 1..={MAX_DIMENSION}")]
    UnsupportedDimension(usize),
    #[error("not a density matrix: {0}")]
    NotDensity(String),
    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),
    #[error("closure exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub(crate) fn check_dimension(d: usize) -> Result<(), HilbertError> {
    if d == 0 || d > MAX_DIMENSION {
        Err(HilbertError::UnsupportedDimension(d))
    } else {
        Ok(())
    }
}

pub(crate) fn same_dimension(expected: usize, got: usize) -> Result<(), HilbertError> {
    if expected == got {
        Ok(())
    } else {
        Err(HilbertError::DimensionMismatch { expected, got })
    }
}

/// Convenience constructor for vectors given as `(re, im)` pairs.
pub fn cvector(entries: &[(f64, f64)]) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|&(re, im)| Complex64::new(re, im)))
}

/// Real vector as a complex one.
pub fn rvector(entries: &[f64]) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|&re| Complex64::new(re, 0.0)))
}
