use std::fmt;

use nalgebra::{DMatrix, DVector};

use super::{interpolate, CoxError, CoxFunction};

/// Largest additivity residual accepted from [`regraduate`].
pub const MAX_RESIDUAL: f64 = 1e-6;

/// The orbit stops after this many nodes per requested grid point.
const ORBIT_FACTOR: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub enum NotRegraduable {
    /// `f` is not strictly increasing in an argument near `(x, y)`, or the
    /// fitted `w` is not strictly increasing at `x`.
    NonMonotone { x: f64, y: f64 },
    ResidualTooLarge { residual: f64 },
}

impl fmt::Display for NotRegraduable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotRegraduable::NonMonotone { x, y } => write!(f, "non-monotone at ({x}, {y})"),
            NotRegraduable::ResidualTooLarge { residual } => {
                write!(f, "residual {residual:e} exceeds {MAX_RESIDUAL:e}")
            }
        }
    }
}

/// An additive representation `w(f(x, y)) = w(x) + w(y)`.
#[derive(Clone, Debug)]
pub struct Regraduation {
    /// Piecewise linear through `(nodes, values)`.
    pub w: CoxFunction,
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
    /// Largest additivity residual over node pairs.
    pub max_residual: f64,
}

impl Regraduation {
    /// `w⁻¹(w(x) + w(y))`, with `w` and its inverse extended linearly past
    /// the last node.
    pub fn conjugate(&self) -> CoxFunction {
        let (nodes, values) = (self.nodes.clone(), self.values.clone());
        let (lo, hi) = (nodes[0], nodes[nodes.len() - 1]);
        CoxFunction::binary("conjugate", lo, hi, move |x, y| {
            let s = interpolate(&nodes, &values, x) + interpolate(&nodes, &values, y);
            interpolate(&values, &nodes, s)
        })
    }
}

fn slack(lo: f64, hi: f64) -> f64 {
    1e-9 * (hi - lo).abs().max(1.0)
}

/// Node pairs `(i, j, f(x_i, x_j))` with the value inside the node range.
fn pairs(f: &CoxFunction, nodes: &[f64]) -> Vec<(usize, usize, f64)> {
    let last = nodes[nodes.len() - 1];
    let tol = slack(nodes[0], last);
    let mut out = Vec::new();
    for i in 0..nodes.len() {
        for j in i..nodes.len() {
            if let Some(v) = f.eval2(nodes[i], nodes[j]) {
                if v <= last + tol {
                    out.push((i, j, v.min(last)));
                }
            }
        }
    }
    out
}

fn residual(nodes: &[f64], values: &[f64], pairs: &[(usize, usize, f64)], scale: f64) -> f64 {
    pairs
        .iter()
        .map(|&(i, j, v)| (scale * (interpolate(nodes, values, v) - values[i] - values[j])).abs())
        .fold(0.0, f64::max)
}

/// Finds `w` with `w(f(x, y)) = w(x) + w(y)`, `w(lo) = 0` and `w(x1) = 1` for
/// the first interior grid point `x1`.
///
/// `w` is represented on the orbit `x_{k+1} = f(x_k, x1)` inside the domain
/// and fitted by least squares over all node pairs; it is linear between
/// nodes.
pub fn regraduate(f: &CoxFunction, grid: usize) -> Result<Regraduation, CoxError> {
    f.expect_arity(2)?;
    let pts = f.grid(grid)?;
    let non_monotone = |x, y| CoxError::NotRegraduable(NotRegraduable::NonMonotone { x, y });
    for &y in &pts {
        for w in pts.windows(2) {
            for (a, b) in [(f.eval2(w[0], y), f.eval2(w[1], y)), (f.eval2(y, w[0]), f.eval2(y, w[1]))] {
                if let (Some(a), Some(b)) = (a, b) {
                    if b <= a {
                        return Err(non_monotone(w[0], y));
                    }
                }
            }
        }
    }

    let (lo, hi) = f.domain();
    let tol = slack(lo, hi);
    let x1 = pts[1];
    let mut nodes = vec![lo, x1];
    while nodes.len() < ORBIT_FACTOR * grid {
        let last = nodes[nodes.len() - 1];
        let Some(next) = f.eval2(last, x1) else { break };
        if next > hi + tol {
            break;
        }
        if next <= last {
            return Err(non_monotone(last, x1));
        }
        nodes.push(next.min(hi));
    }

    let pairs = pairs(f, &nodes);
    let n = nodes.len();
    let mut values = vec![0.0; n];
    values[1] = 1.0;
    if n > 2 {
        // unknowns are w(x_2) .. w(x_{n-1})
        let mut a = DMatrix::<f64>::zeros(pairs.len(), n - 2);
        let mut b = DVector::<f64>::zeros(pairs.len());
        for (row, &(i, j, v)) in pairs.iter().enumerate() {
            let k = nodes.partition_point(|&p| p <= v).clamp(1, n - 1);
            let t = (v - nodes[k - 1]) / (nodes[k] - nodes[k - 1]);
            let mut add = |idx: usize, c: f64| match idx {
                0 => {}
                1 => b[row] -= c,
                _ => a[(row, idx - 2)] += c,
            };
            add(k - 1, 1.0 - t);
            add(k, t);
            add(i, -1.0);
            add(j, -1.0);
        }
        let solution = a
            .svd(true, true)
            .solve(&b, 1e-14)
            .expect("singular vectors were computed");
        values[2..].copy_from_slice(solution.as_slice());
    }
    for k in 1..n {
        if values[k] <= values[k - 1] {
            return Err(non_monotone(nodes[k], nodes[k]));
        }
    }
    let max_residual = residual(&nodes, &values, &pairs, 1.0);
    if max_residual > MAX_RESIDUAL {
        return Err(CoxError::NotRegraduable(NotRegraduable::ResidualTooLarge {
            residual: max_residual,
        }));
    }
    Ok(Regraduation {
        w: CoxFunction::piecewise_linear("w", nodes.clone(), values.clone())?,
        nodes,
        values,
        max_residual,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RescaleReport {
    pub pass: bool,
    pub tolerance: f64,
    /// `(λ, max residual of λ w)` per factor.
    pub residuals: Vec<(f64, f64)>,
}

/// Checks that `λ w` is again additive for `f` for every factor `λ > 0`.
pub fn verify_rescale_freedom(
    reg: &Regraduation,
    f: &CoxFunction,
    factors: &[f64],
    tolerance: f64,
) -> Result<RescaleReport, CoxError> {
    f.expect_arity(2)?;
    if let Some(&bad) = factors.iter().find(|&&l| l.is_nan() || l <= 0.0) {
        return Err(CoxError::NonPositiveFactor(bad));
    }
    let pairs = pairs(f, &reg.nodes);
    let residuals: Vec<(f64, f64)> = factors
        .iter()
        .map(|&l| (l, residual(&reg.nodes, &reg.values, &pairs, l)))
        .collect();
    Ok(RescaleReport {
        pass: residuals.iter().all(|&(_, r)| r < tolerance),
        tolerance,
        residuals,
    })
}
