use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::{check_dimension, same_dimension, CMatrix, CVector, HilbertError, PROJECTOR_TOL, RANK_TOL};

/// A subspace of `C^d`, stored as a `d x k` matrix with orthonormal columns.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: CMatrix,
}

impl Subspace {
    pub fn null(d: usize) -> Self {
        Subspace {
            basis: CMatrix::zeros(d, 0),
        }
    }

    pub fn full(d: usize) -> Self {
        Subspace {
            basis: CMatrix::identity(d, d),
        }
    }

    /// Ambient dimension `d`.
    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    /// Subspace dimension `k`.
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }

    /// Equality by projector distance.
    pub fn approx_eq(&self, other: &Subspace) -> bool {
        self.ambient() == other.ambient()
            && self.dim() == other.dim()
            && (self.projector() - other.projector()).norm() < PROJECTOR_TOL
    }

    /// `self ⊆ other`, tested as `P_other P_self = P_self`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        if self.dim() == 0 {
            return true;
        }
        let p = self.projector();
        (other.projector() * &p - p).norm() < PROJECTOR_TOL
    }

    /// Orthonormal basis of the column span. The rank counts singular values
    /// above `RANK_TOL` times the largest; the basis is the matching top
    /// eigenvectors of `M M†`.
    pub(crate) fn span(m: CMatrix) -> Subspace {
        let d = m.nrows();
        if m.ncols() == 0 {
            return Subspace::null(d);
        }
        let sv = m.singular_values();
        let smax = sv.iter().copied().fold(0.0, f64::max);
        if smax <= f64::MIN_POSITIVE {
            return Subspace::null(d);
        }
        let rank = sv.iter().filter(|&&s| s > RANK_TOL * smax).count();
        let gram = &m * m.adjoint();
        let eig = SymmetricEigen::new((&gram + gram.adjoint()) * c(0.5));
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        order.truncate(rank);
        order.sort_unstable();
        Subspace {
            basis: eig.eigenvectors.select_columns(order.iter()),
        }
    }
}

/// The span of `vectors` in `C^d`.
pub fn subspace_from_vectors(d: usize, vectors: &[CVector]) -> Result<Subspace, HilbertError> {
    check_dimension(d)?;
    for v in vectors {
        same_dimension(d, v.len())?;
    }
    Ok(Subspace::span(CMatrix::from_columns(vectors)))
}

pub fn join_s(a: &Subspace, b: &Subspace) -> Result<Subspace, HilbertError> {
    same_dimension(a.ambient(), b.ambient())?;
    let d = a.ambient();
    let mut m = CMatrix::zeros(d, a.dim() + b.dim());
    m.columns_mut(0, a.dim()).copy_from(&a.basis);
    m.columns_mut(a.dim(), b.dim()).copy_from(&b.basis);
    Ok(Subspace::span(m))
}

/// Orthogonal complement: the range of `I - P`.
pub fn ortho_s(a: &Subspace) -> Subspace {
    let d = a.ambient();
    if a.dim() == 0 {
        return Subspace::full(d);
    }
    let complement = CMatrix::identity(d, d) - a.projector();
    if complement.norm() < PROJECTOR_TOL {
        return Subspace::null(d);
    }
    Subspace::span(complement)
}

/// Intersection via `¬(¬a ∨ ¬b)`.
pub fn meet_s(a: &Subspace, b: &Subspace) -> Result<Subspace, HilbertError> {
    Ok(ortho_s(&join_s(&ortho_s(a), &ortho_s(b))?))
}

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
