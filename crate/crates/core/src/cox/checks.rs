use super::{CoxError, CoxFunction};

/// Slack allowed when deciding that `g(x)` stays inside the domain.
const DOMAIN_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct InvolutionReport {
    pub pass: bool,
    pub tolerance: f64,
    /// `max |g(g(x)) - x|` over the grid.
    pub max_residual: f64,
    pub worst_x: f64,
    /// `g` is the identity within tolerance (the trivial branch).
    pub identity: bool,
}

/// Checks `g(g(x)) = x` on a uniform grid over the domain of `g`.
pub fn check_involution(g: &CoxFunction, grid: usize, tolerance: f64) -> Result<InvolutionReport, CoxError> {
    g.expect_arity(1)?;
    let (lo, hi) = g.domain();
    let mut max_residual = 0.0;
    let mut worst_x = lo;
    let mut max_shift: f64 = 0.0;
    for x in g.grid(grid)? {
        let y = g.eval1(x).ok_or(CoxError::DomainEscape { x })?;
        if !(lo - DOMAIN_SLACK..=hi + DOMAIN_SLACK).contains(&y) {
            return Err(CoxError::DomainEscape { x });
        }
        let back = g.eval1(y).ok_or(CoxError::DomainEscape { x })?;
        let r = (back - x).abs();
        if r > max_residual {
            max_residual = r;
            worst_x = x;
        }
        max_shift = max_shift.max((y - x).abs());
    }
    Ok(InvolutionReport {
        pass: max_residual < tolerance,
        tolerance,
        max_residual,
        worst_x,
        identity: max_shift < tolerance,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssociativityReport {
    pub pass: bool,
    pub tolerance: f64,
    /// `max |f(f(x,y),z) - f(x,f(y,z))|` over evaluated triples.
    pub max_residual: f64,
    pub worst: Option<(f64, f64, f64)>,
    pub checked: usize,
    /// Triples where an intermediate value fell outside a sample grid.
    pub skipped: usize,
}

/// Checks `f(f(x,y),z) = f(x,f(y,z))` over the grid cube. Triples whose
/// evaluation is undefined are skipped; more than half skipped is an error.
pub fn check_associativity(f: &CoxFunction, grid: usize, tolerance: f64) -> Result<AssociativityReport, CoxError> {
    f.expect_arity(2)?;
    let pts = f.grid(grid)?;
    let mut report = AssociativityReport {
        pass: false,
        tolerance,
        max_residual: 0.0,
        worst: None,
        checked: 0,
        skipped: 0,
    };
    for &x in &pts {
        for &y in &pts {
            for &z in &pts {
                let left = f.eval2(x, y).and_then(|a| f.eval2(a, z));
                let right = f.eval2(y, z).and_then(|b| f.eval2(x, b));
                let (Some(l), Some(r)) = (left, right) else {
                    report.skipped += 1;
                    continue;
                };
                report.checked += 1;
                let res = (l - r).abs();
                if report.worst.is_none() || res > report.max_residual {
                    report.max_residual = res;
                    report.worst = Some((x, y, z));
                }
            }
        }
    }
    let total = report.checked + report.skipped;
    if 2 * report.skipped > total {
        return Err(CoxError::TooManySkips {
            skipped: report.skipped,
            total,
        });
    }
    report.pass = report.max_residual < tolerance;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cox::builtin;

    #[test]
    fn one_minus_is_a_nontrivial_involution() {
        let r = check_involution(&builtin("one-minus").unwrap(), 33, 1e-12).unwrap();
        assert!(r.pass && !r.identity);
    }

    #[test]
    fn identity_is_flagged() {
        let r = check_involution(&builtin("identity").unwrap(), 33, 1e-12).unwrap();
        assert!(r.pass && r.identity);
    }

    #[test]
    fn square_fails_near_the_oracle_maximum() {
        let r = check_involution(&builtin("square").unwrap(), 1001, 1e-6).unwrap();
        assert!(!r.pass);
        // |x^4 - x| peaks where 4x^3 = 1
        let peak = 0.25f64.powf(1.0 / 3.0);
        assert!((r.worst_x - peak).abs() < 2e-3);
        assert!((r.max_residual - (peak - peak.powi(4))).abs() < 1e-5);
    }

    #[test]
    fn escape_is_reported() {
        let g = CoxFunction::unary("shift", 0.0, 1.0, |x| x + 0.5);
        assert!(matches!(check_involution(&g, 5, 1e-9), Err(CoxError::DomainEscape { .. })));
        assert_eq!(
            check_involution(&builtin("sum").unwrap(), 5, 1e-9).unwrap_err(),
            CoxError::Arity { expected: 1, got: 2 }
        );
    }

    #[test]
    fn associative_rules_pass() {
        for name in ["sum", "sumprod", "max"] {
            let r = check_associativity(&builtin(name).unwrap(), 33, 1e-10).unwrap();
            assert!(r.pass, "{name}: {r:?}");
            assert_eq!(r.checked, 33 * 33 * 33);
        }
    }

    #[test]
    fn x_plus_y_squared_fails() {
        let f = CoxFunction::binary("x+y^2", 0.0, 1.0, |x, y| x + y * y);
        let r = check_associativity(&f, 9, 1e-10).unwrap();
        assert!(!r.pass);
        let (x, y, z) = r.worst.unwrap();
        let lhs = (x + y * y) + z * z;
        let rhs = x + (y + z * z).powi(2);
        assert!(((lhs - rhs).abs() - r.max_residual).abs() < 1e-12);
    }

    #[test]
    fn sample_grid_skips() {
        let mut rows = Vec::new();
        for i in 0..5 {
            for j in 0..5 {
                let (x, y) = (i as f64 / 4.0, j as f64 / 4.0);
                rows.push((x, y, x + y));
            }
        }
        let f = CoxFunction::from_samples("sum", &rows).unwrap();
        assert!(matches!(
            check_associativity(&f, 5, 1e-9),
            Err(CoxError::TooManySkips { .. })
        ));
    }
}
