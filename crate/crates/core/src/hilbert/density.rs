use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::subspace::c;
use super::{check_dimension, same_dimension, CMatrix, CVector, GeneratedLattice, HilbertError, Subspace, BORN_CLAMP, PROJECTOR_TOL, RANK_TOL};
use crate::number::Number;
use crate::state::Valuation;

/// Hermitian, positive semidefinite, trace one.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self, HilbertError> {
        if !m.is_square() {
            return Err(HilbertError::NotDensity(format!("{}x{} is not square", m.nrows(), m.ncols())));
        }
        check_dimension(m.nrows())?;
        let skew = (&m - m.adjoint()).norm();
        if skew >= RANK_TOL {
            return Err(HilbertError::NotDensity(format!("not Hermitian (deviation {skew:e})")));
        }
        let hermitian = (&m + m.adjoint()) * c(0.5);
        let min = SymmetricEigen::new(hermitian.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min <= -RANK_TOL {
            return Err(HilbertError::NotDensity(format!("negative eigenvalue {min:e}")));
        }
        let trace = hermitian.trace().re;
        if (trace - 1.0).abs() >= RANK_TOL {
            return Err(HilbertError::NotDensity(format!("trace {trace}")));
        }
        Ok(DensityMatrix { m: hermitian })
    }

    /// `I / d`
    pub fn maximally_mixed(d: usize) -> Result<Self, HilbertError> {
        check_dimension(d)?;
        Ok(DensityMatrix {
            m: CMatrix::identity(d, d) * c(1.0 / d as f64),
        })
    }

    /// `|v><v| / <v|v>`
    pub fn pure(v: &CVector) -> Result<Self, HilbertError> {
        check_dimension(v.len())?;
        let norm = v.norm();
        if norm <= RANK_TOL {
            return Err(HilbertError::NotDensity("zero state vector".into()));
        }
        let u = v / c(norm);
        Ok(DensityMatrix { m: &u * u.adjoint() })
    }

    /// `G G† / tr(G G†)` with `G` a standard complex Gaussian matrix.
    pub fn random<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Self, HilbertError> {
        check_dimension(d)?;
        let g = CMatrix::from_fn(d, d, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        });
        let w = &g * g.adjoint();
        let trace = w.trace().re;
        Ok(DensityMatrix { m: w * c(1.0 / trace) })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    /// `λ self + (1 - λ) other` for `λ` in `[0, 1]`.
    pub fn mix(&self, other: &DensityMatrix, lambda: f64) -> Result<Self, HilbertError> {
        same_dimension(self.dim(), other.dim())?;
        DensityMatrix::new(&self.m * c(lambda) + &other.m * c(1.0 - lambda))
    }
}

/// `Re tr(ρ P)`, clamped into `[0, 1]` when within `BORN_CLAMP` of it.
pub fn born(rho: &DensityMatrix, s: &Subspace) -> Result<f64, HilbertError> {
    same_dimension(rho.dim(), s.ambient())?;
    let value = (rho.matrix() * s.projector()).trace().re;
    if !(-BORN_CLAMP..=1.0 + BORN_CLAMP).contains(&value) {
        return Err(HilbertError::NumericalBreakdown(format!("tr(ρP) = {value}")));
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Born probabilities of every element of a generated lattice.
pub fn born_valuation(rho: &DensityMatrix, generated: &GeneratedLattice) -> Result<Valuation, HilbertError> {
    let values = generated
        .embedding
        .iter()
        .map(|s| born(rho, s).map(Number::Float))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Valuation::new(values))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionReport {
    pub pass: bool,
    /// Largest `‖P_i P_j‖` over `i < j`.
    pub max_cross: f64,
    /// `‖Σ P_i - I‖`
    pub sum_deviation: f64,
    /// Pair attaining `max_cross`.
    pub worst_pair: Option<(usize, usize)>,
}

/// Whether the projectors are mutually orthogonal and sum to the identity.
pub fn resolution_check(projectors: &[CMatrix]) -> ResolutionReport {
    let d = projectors.first().map_or(0, |p| p.nrows());
    let mut max_cross = 0.0;
    let mut worst_pair = None;
    for i in 0..projectors.len() {
        for j in i + 1..projectors.len() {
            let cross = (&projectors[i] * &projectors[j]).norm();
            if cross > max_cross {
                max_cross = cross;
                worst_pair = Some((i, j));
            }
        }
    }
    let mut sum = CMatrix::zeros(d, d);
    for p in projectors {
        sum += p;
    }
    let sum_deviation = (sum - CMatrix::identity(d, d)).norm();
    ResolutionReport {
        pass: max_cross < PROJECTOR_TOL && sum_deviation < PROJECTOR_TOL,
        max_cross,
        sum_deviation,
        worst_pair,
    }
}

/// Eigenprojectors of a Hermitian matrix, one per distinct eigenvalue in
/// ascending order. Eigenvalues closer than `PROJECTOR_TOL` are merged.
pub fn spectral_projectors(h: &CMatrix) -> Vec<(f64, CMatrix)> {
    let d = h.nrows();
    let eig = SymmetricEigen::new(h.clone());
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut out: Vec<(f64, CMatrix)> = Vec::new();
    for i in order {
        let lambda = eig.eigenvalues[i];
        let v = eig.eigenvectors.column(i);
        let p = v * v.adjoint();
        match out.last_mut() {
            Some((mu, acc)) if (lambda - *mu).abs() < PROJECTOR_TOL => *acc += p,
            _ => out.push((lambda, p)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{rvector, subspace_from_vectors};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn line(v: &[f64]) -> Subspace {
        subspace_from_vectors(v.len(), &[rvector(v)]).unwrap()
    }

    #[test]
    fn born_examples() {
        let rho = DensityMatrix::pure(&rvector(&[1.0, 0.0])).unwrap();
        assert!((born(&rho, &line(&[1.0, 0.0])).unwrap() - 1.0).abs() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!((born(&mixed, &line(&[0.3, 0.7])).unwrap() - 0.5).abs() < 1e-12);
        let one = DensityMatrix::pure(&rvector(&[0.0, 1.0])).unwrap();
        assert!((born(&one, &line(&[1.0, 1.0])).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(
            born(&one, &line(&[1.0, 0.0, 0.0])).unwrap_err(),
            HilbertError::DimensionMismatch { expected: 2, got: 3 }
        );
    }

    #[test]
    fn density_validation() {
        let bad = CMatrix::from_row_slice(2, 2, &[c(1.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(DensityMatrix::new(bad), Err(HilbertError::NotDensity(_))));
        let negative = CMatrix::from_row_slice(2, 2, &[c(1.5), c(0.0), c(0.0), c(-0.5)]);
        assert!(matches!(DensityMatrix::new(negative), Err(HilbertError::NotDensity(_))));
        let trace2 = CMatrix::identity(2, 2);
        assert!(matches!(DensityMatrix::new(trace2), Err(HilbertError::NotDensity(_))));
        assert!(DensityMatrix::new(CMatrix::identity(2, 2) * c(0.5)).is_ok());
    }

    #[test]
    fn random_density_is_valid_and_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = DensityMatrix::random(3, &mut rng).unwrap();
        assert!(DensityMatrix::new(a.matrix().clone()).is_ok());
        let b = DensityMatrix::random(3, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn resolutions() {
        let p0 = line(&[1.0, 0.0]).projector();
        let p1 = line(&[0.0, 1.0]).projector();
        assert!(resolution_check(&[p0.clone(), p1]).pass);
        let r = resolution_check(&[p0.clone(), p0]);
        assert!(!r.pass && r.worst_pair == Some((0, 1)));
    }

    #[test]
    fn spectral_resolution_of_hermitian() {
        let h = CMatrix::from_fn(3, 3, |i, j| {
            let base = c((i + 2 * j) as f64) + c((j + 2 * i) as f64);
            if i == j {
                base + c(i as f64)
            } else {
                base + Complex64::new(0.0, i as f64 - j as f64)
            }
        });
        let parts = spectral_projectors(&h);
        assert_eq!(parts.len(), 3);
        let ps: Vec<CMatrix> = parts.iter().map(|(_, p)| p.clone()).collect();
        assert!(resolution_check(&ps).pass);
        // H = Σ λ P
        let mut rebuilt = CMatrix::zeros(3, 3);
        for (l, p) in &parts {
            rebuilt += p * c(*l);
        }
        assert!((rebuilt - h).norm() < 1e-9);
    }
}
