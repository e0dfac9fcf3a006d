//! Generalized probability measures (states) on finite orthomodular lattices.
//!
//! A state assigns every element a value in `[0, 1]` with `s(0) = 0`,
//! `s(1) = 1` and `s(a v b) = s(a) + s(b)` whenever `a` is orthogonal to `b`.
//! On a finite lattice these conditions cut out a convex polytope; this module
//! generates the constraint system, verifies candidate valuations, finds
//! feasible points and vertices, extracts the affine relations every state
//! satisfies, and scans states for classical laws that fail.

pub(crate) mod linalg;
mod polytope;
mod scans;
mod system;

pub use polytope::{
    extreme_states, extreme_states_with, find_state, find_state_with, implied_affine_relations,
    sample_states, AffineRelation, Arithmetic, BoundSide, CertificateTerm, EXACT_ELEMENT_LIMIT,
};
pub use scans::{
    decomposition_scan, inclusion_exclusion_scan, subadditivity_scan, DecompositionWitness,
    InclusionExclusionViolation, SubadditivityViolation,
};
pub use system::{
    build_state_system, is_state, Constraint, ConstraintViolation, LinearEquality,
    StateCheckReport, StateSystem,
};

use num_rational::BigRational;
use thiserror::Error;

use crate::classify::{ClassifyError, OrthomodularWitness};
use crate::lattice::ElementId;
use crate::number::Number;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("valuation has {got} values but the lattice has {expected} elements")]
    DomainMismatch { expected: usize, got: usize },
    #[error("lattice is not orthomodular (witness x = {}, b = {})", .0.x, .0.b)]
    NotOrthomodular(OrthomodularWitness),
    #[error("the lattice admits no state")]
    Infeasible { certificate: Vec<CertificateTerm> },
    #[error("more than {cap} extreme states")]
    CapExceeded { cap: usize, partial: Vec<Valuation> },
    #[error("valuation is not a state ({} violated constraint(s))", .0.violations.len())]
    NotAState(Box<StateCheckReport>),
}

impl From<ClassifyError> for StateError {
    fn from(err: ClassifyError) -> Self {
        match err {
            ClassifyError::NotOrthomodular(w) => StateError::NotOrthomodular(w),
            ClassifyError::TooManyBlocks(_) => unreachable!("block search is not used here"),
        }
    }
}

/// A value for every element of a lattice, indexed by element id.
#[derive(Clone, Debug, PartialEq)]
pub struct Valuation {
    values: Vec<Number>,
}

impl Valuation {
    pub fn new(values: Vec<Number>) -> Self {
        Valuation { values }
    }

    pub fn exact(values: Vec<BigRational>) -> Self {
        Valuation {
            values: values.into_iter().map(Number::Exact).collect(),
        }
    }

    pub fn float(values: Vec<f64>) -> Self {
        Valuation {
            values: values.into_iter().map(Number::Float).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, e: ElementId) -> &Number {
        &self.values[e.index()]
    }

    pub fn values(&self) -> &[Number] {
        &self.values
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(Number::is_exact)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(Number::to_f64).collect()
    }

    /// Sum of `weights[i] * valuations[i]`; all inputs must share a length.
    pub fn combine(valuations: &[Valuation], weights: &[Number]) -> Valuation {
        let n = valuations.first().map_or(0, Valuation::len);
        let mut values = vec![Number::zero(); n];
        for (v, w) in valuations.iter().zip(weights) {
            for (acc, x) in values.iter_mut().zip(&v.values) {
                *acc = &*acc + &(w * x);
            }
        }
        Valuation { values }
    }
}
