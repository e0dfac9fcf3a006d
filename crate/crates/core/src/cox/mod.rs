//! Functional equations behind additive measures: involutive negation rules,
//! associative combination rules, and their regraduation to plain addition.

mod checks;
mod regrade;

pub use checks::{check_associativity, check_involution, AssociativityReport, InvolutionReport};
pub use regrade::{regraduate, verify_rescale_freedom, NotRegraduable, Regraduation, RescaleReport, MAX_RESIDUAL};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default points per axis for grid scans.
pub const DEFAULT_GRID: usize = 33;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoxError {
    #[error("expected a function of arity {expected}, got arity {got}")]
    Arity { expected: usize, got: usize },
    #[error("g({x}) leaves the domain")]
    DomainEscape { x: f64 },
    #[error("{skipped} of {total} triples left the domain")]
    TooManySkips { skipped: usize, total: usize },
    #[error("not regraduable: {0}")]
    NotRegraduable(NotRegraduable),
    #[error("rescale factor {0} is not positive")]
    NonPositiveFactor(f64),
    #[error("grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),
    #[error("bad samples: {0}")]
    BadSamples(String),
}

type Unary = Arc<dyn Fn(f64) -> Option<f64> + Send + Sync>;
type Binary = Arc<dyn Fn(f64, f64) -> Option<f64> + Send + Sync>;

#[derive(Clone)]
enum Rule {
    Unary(Unary),
    Binary(Binary),
}

/// A real function of one or two variables on `[lo, hi]` (or its square).
/// Evaluation returns `None` where the rule is undefined, which only happens
/// for sample-defined functions outside their grid.
#[derive(Clone)]
pub struct CoxFunction {
    name: String,
    lo: f64,
    hi: f64,
    rule: Rule,
}

impl fmt::Debug for CoxFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxFunction")
            .field("name", &self.name)
            .field("arity", &self.arity())
            .field("domain", &(self.lo, self.hi))
            .finish()
    }
}

impl CoxFunction {
    pub fn unary(name: &str, lo: f64, hi: f64, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        CoxFunction {
            name: name.to_string(),
            lo,
            hi,
            rule: Rule::Unary(Arc::new(move |x| Some(f(x)))),
        }
    }

    pub fn binary(
        name: &str,
        lo: f64,
        hi: f64,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        CoxFunction {
            name: name.to_string(),
            lo,
            hi,
            rule: Rule::Binary(Arc::new(move |x, y| Some(f(x, y)))),
        }
    }

    pub(crate) fn partial_binary(
        name: &str,
        lo: f64,
        hi: f64,
        f: impl Fn(f64, f64) -> Option<f64> + Send + Sync + 'static,
    ) -> Self {
        CoxFunction {
            name: name.to_string(),
            lo,
            hi,
            rule: Rule::Binary(Arc::new(f)),
        }
    }

    /// Piecewise-linear interpolation through `(xs[i], ys[i])` with linear
    /// extrapolation past the ends. `xs` must be strictly increasing.
    pub fn piecewise_linear(name: &str, xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, CoxError> {
        if xs.len() < 2 || xs.len() != ys.len() {
            return Err(CoxError::BadSamples("need at least two (x, y) nodes".into()));
        }
        if xs.windows(2).any(|w| w[0].is_nan() || w[0] >= w[1]) {
            return Err(CoxError::BadSamples("nodes must be strictly increasing".into()));
        }
        let (lo, hi) = (xs[0], xs[xs.len() - 1]);
        Ok(CoxFunction {
            name: name.to_string(),
            lo,
            hi,
            rule: Rule::Unary(Arc::new(move |x| Some(interpolate(&xs, &ys, x)))),
        })
    }

    /// A binary function given on a full rectangular grid as `(x, y, f)`
    /// rows, evaluated by bilinear interpolation. The domain is the range of
    /// the `x` samples.
    pub fn from_samples(name: &str, rows: &[(f64, f64, f64)]) -> Result<Self, CoxError> {
        let axis = |pick: fn(&(f64, f64, f64)) -> f64| {
            let mut v: Vec<f64> = rows.iter().map(pick).collect();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        };
        let xs = axis(|r| r.0);
        let ys = axis(|r| r.1);
        if xs.len() < 2 || ys.len() < 2 {
            return Err(CoxError::BadSamples("need at least a 2x2 grid".into()));
        }
        let mut table = vec![f64::NAN; xs.len() * ys.len()];
        for &(x, y, v) in rows {
            let i = xs.binary_search_by(|p| p.total_cmp(&x)).expect("x on axis");
            let j = ys.binary_search_by(|p| p.total_cmp(&y)).expect("y on axis");
            table[i * ys.len() + j] = v;
        }
        if table.iter().any(|v| !v.is_finite()) {
            return Err(CoxError::BadSamples(format!(
                "samples do not cover the {}x{} grid",
                xs.len(),
                ys.len()
            )));
        }
        let (lo, hi) = (xs[0], xs[xs.len() - 1]);
        let rule = move |x: f64, y: f64| bilinear(&xs, &ys, &table, x, y);
        Ok(CoxFunction::partial_binary(name, lo, hi, rule))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        match self.rule {
            Rule::Unary(_) => 1,
            Rule::Binary(_) => 2,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn eval1(&self, x: f64) -> Option<f64> {
        match &self.rule {
            Rule::Unary(f) => f(x),
            Rule::Binary(_) => None,
        }
    }

    pub fn eval2(&self, x: f64, y: f64) -> Option<f64> {
        match &self.rule {
            Rule::Binary(f) => f(x, y),
            Rule::Unary(_) => None,
        }
    }

    pub(crate) fn expect_arity(&self, expected: usize) -> Result<(), CoxError> {
        if self.arity() == expected {
            Ok(())
        } else {
            Err(CoxError::Arity {
                expected,
                got: self.arity(),
            })
        }
    }

    /// `grid` evenly spaced points from `lo` to `hi`.
    pub fn grid(&self, grid: usize) -> Result<Vec<f64>, CoxError> {
        uniform(self.lo, self.hi, grid)
    }
}

pub(crate) fn uniform(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, CoxError> {
    if n < 2 {
        return Err(CoxError::GridTooSmall(n));
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect())
}

pub(crate) fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let k = xs.partition_point(|&p| p <= x).clamp(1, xs.len() - 1);
    let (x0, x1) = (xs[k - 1], xs[k]);
    let t = (x - x0) / (x1 - x0);
    ys[k - 1] + t * (ys[k] - ys[k - 1])
}

fn cell(axis: &[f64], v: f64) -> Option<(usize, f64)> {
    if v < axis[0] || v > axis[axis.len() - 1] {
        return None;
    }
    let k = axis.partition_point(|&p| p <= v).clamp(1, axis.len() - 1);
    Some((k - 1, (v - axis[k - 1]) / (axis[k] - axis[k - 1])))
}

fn bilinear(xs: &[f64], ys: &[f64], table: &[f64], x: f64, y: f64) -> Option<f64> {
    let (i, s) = cell(xs, x)?;
    let (j, t) = cell(ys, y)?;
    let at = |a: usize, b: usize| table[a * ys.len() + b];
    Some(
        (1.0 - s) * (1.0 - t) * at(i, j)
            + s * (1.0 - t) * at(i + 1, j)
            + (1.0 - s) * t * at(i, j + 1)
            + s * t * at(i + 1, j + 1),
    )
}

/// Names accepted by [`builtin`].
pub const BUILTINS: [&str; 6] = ["sum", "sumprod", "max", "one-minus", "identity", "square"];

/// Built-in rules on `[0, 1]`: `sum` = x+y, `sumprod` = x+y+xy, `max`,
/// `one-minus` = 1-x, `identity` = x, `square` = x².
pub fn builtin(name: &str) -> Option<CoxFunction> {
    Some(match name {
        "sum" => CoxFunction::binary(name, 0.0, 1.0, |x, y| x + y),
        "sumprod" => CoxFunction::binary(name, 0.0, 1.0, |x, y| x + y + x * y),
        "max" => CoxFunction::binary(name, 0.0, 1.0, f64::max),
        "one-minus" => CoxFunction::unary(name, 0.0, 1.0, |x| 1.0 - x),
        "identity" => CoxFunction::unary(name, 0.0, 1.0, |x| x),
        "square" => CoxFunction::unary(name, 0.0, 1.0, |x| x * x),
        _ => return None,
    })
}
