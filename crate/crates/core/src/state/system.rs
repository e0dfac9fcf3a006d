use std::collections::HashSet;

use num_integer::Integer;

use super::{StateError, Valuation};
use crate::classify::require_orthomodular;
use crate::lattice::{ElementId, OrthoLattice};
use crate::number::Number;

/// Where a constraint of the state system comes from.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// `s(0) = 0`
    Bottom,
    /// `s(1) = 1`
    Top,
    /// `s(a v b) = s(a) + s(b)` for orthogonal `a`, `b`.
    Additivity {
        a: ElementId,
        b: ElementId,
        join: ElementId,
    },
    /// `s(x) >= 0`
    NonNegative(ElementId),
    /// `s(x) <= 1`
    AtMostOne(ElementId),
}

/// `sum(coefficient * s(element)) = rhs` with terms sorted by element and
/// no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEquality {
    pub terms: Vec<(ElementId, i64)>,
    pub rhs: i64,
    pub origin: Constraint,
}

impl LinearEquality {
    fn normalized(mut raw: Vec<(ElementId, i64)>, rhs: i64, origin: Constraint) -> Option<Self> {
        raw.sort_by_key(|&(e, _)| e);
        let mut terms: Vec<(ElementId, i64)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match terms.last_mut() {
                Some((last, acc)) if *last == e => *acc += c,
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|&(_, c)| c != 0);
        if terms.is_empty() {
            return None;
        }
        let g = terms.iter().fold(rhs.abs(), |g, &(_, c)| g.gcd(&c.abs()));
        let s = if terms[0].1 < 0 { -g } else { g };
        Some(LinearEquality {
            terms: terms.into_iter().map(|(e, c)| (e, c / s)).collect(),
            rhs: rhs / s,
            origin,
        })
    }

    /// `lhs - rhs` evaluated on a valuation.
    pub fn residual(&self, v: &Valuation) -> Number {
        let mut acc = Number::ratio(-self.rhs, 1);
        for &(e, c) in &self.terms {
            acc = &acc + &(&Number::ratio(c, 1) * v.get(e));
        }
        acc
    }
}

/// Linear description of the state polytope: one variable per element, the
/// equalities below, and `0 <= s(x) <= 1` for every element.
#[derive(Clone, Debug)]
pub struct StateSystem {
    pub variables: usize,
    pub equalities: Vec<LinearEquality>,
}

pub(crate) fn generate(ortho: &OrthoLattice) -> StateSystem {
    let mut equalities = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |eq: Option<LinearEquality>| {
        if let Some(eq) = eq {
            if seen.insert((eq.terms.clone(), eq.rhs)) {
                equalities.push(eq);
            }
        }
    };
    push(LinearEquality::normalized(
        vec![(ortho.bottom(), 1)],
        0,
        Constraint::Bottom,
    ));
    push(LinearEquality::normalized(vec![(ortho.top(), 1)], 1, Constraint::Top));
    for a in ortho.elements() {
        for b in ortho.elements().filter(|&b| b >= a) {
            if !ortho.orthogonal(a, b) {
                continue;
            }
            let join = ortho.join(a, b);
            push(LinearEquality::normalized(
                vec![(join, 1), (a, -1), (b, -1)],
                0,
                Constraint::Additivity { a, b, join },
            ));
        }
    }
    StateSystem {
        variables: ortho.len(),
        equalities,
    }
}

/// Generates the state system of an orthomodular lattice.
pub fn build_state_system(ortho: &OrthoLattice) -> Result<StateSystem, StateError> {
    require_orthomodular(ortho)?;
    Ok(generate(ortho))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintViolation {
    pub constraint: Constraint,
    /// Signed amount by which the constraint fails.
    pub residual: Number,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateCheckReport {
    pub pass: bool,
    pub tolerance: f64,
    pub exact: bool,
    pub violations: Vec<ConstraintViolation>,
    /// `s(0) = 0` holds within tolerance.
    pub bottom_zero: bool,
    /// Elements where `s(neg a) = 1 - s(a)` fails.
    pub complement_failures: Vec<ElementId>,
}

/// Checks every constraint of the state system within `tolerance`. Exact
/// valuations are compared exactly, so a tolerance of 0 gives exact mode.
pub fn is_state(
    ortho: &OrthoLattice,
    valuation: &Valuation,
    tolerance: f64,
) -> Result<StateCheckReport, StateError> {
    if valuation.len() != ortho.len() {
        return Err(StateError::DomainMismatch {
            expected: ortho.len(),
            got: valuation.len(),
        });
    }
    let system = generate(ortho);
    let mut violations = Vec::new();
    for x in ortho.elements() {
        let v = valuation.get(x);
        if v.lt_f64(-tolerance) {
            violations.push(ConstraintViolation {
                constraint: Constraint::NonNegative(x),
                residual: v.clone(),
            });
        }
        let over = v - &Number::one();
        if over.gt_f64(tolerance) {
            violations.push(ConstraintViolation {
                constraint: Constraint::AtMostOne(x),
                residual: over,
            });
        }
    }
    for eq in &system.equalities {
        let r = eq.residual(valuation);
        if r.exceeds(tolerance) {
            violations.push(ConstraintViolation {
                constraint: eq.origin,
                residual: r,
            });
        }
    }
    let bottom_zero = !valuation.get(ortho.bottom()).exceeds(tolerance);
    let complement_failures = ortho
        .elements()
        .filter(|&a| {
            let r = &(valuation.get(ortho.neg(a)) + valuation.get(a)) - &Number::one();
            r.exceeds(tolerance)
        })
        .collect();
    Ok(StateCheckReport {
        pass: violations.is_empty(),
        tolerance,
        exact: valuation.is_exact(),
        violations,
        bottom_zero,
        complement_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{firefly_l12, mo, o6, powerset};

    fn l12_valuation(atoms: [(&str, Number); 5]) -> Valuation {
        let l = firefly_l12();
        let mut values = vec![Number::zero(); l.len()];
        values[l.top().index()] = Number::one();
        for (name, v) in atoms {
            let a = l.find(name).unwrap();
            values[l.neg(a).index()] = &Number::one() - &v;
            values[a.index()] = v;
        }
        Valuation::new(values)
    }

    #[test]
    fn powerset2_system() {
        let p = powerset(2).unwrap();
        let sys = build_state_system(&p).unwrap();
        let e = ElementId::new;
        // s{} = 0, s{1,2} = 1, s{1,2} = s{1} + s{2}
        assert!(sys.equalities.iter().any(|q| q.terms == vec![(e(0), 1)] && q.rhs == 0));
        assert!(sys.equalities.iter().any(|q| q.terms == vec![(e(3), 1)] && q.rhs == 1));
        assert!(sys
            .equalities
            .iter()
            .any(|q| q.terms == vec![(e(1), 1), (e(2), 1), (e(3), -1)] && q.rhs == 0));
        // pairs with bottom collapse onto s{} = 0
        assert_eq!(sys.equalities.len(), 3);
    }

    #[test]
    fn mo2_block_constraints() {
        let m = mo(2).unwrap();
        let sys = build_state_system(&m).unwrap();
        let e = ElementId::new;
        for (a, na) in [(1, 2), (3, 4)] {
            assert!(sys.equalities.iter().any(|q| q.terms
                == vec![(e(a), 1), (e(na), 1), (e(5), -1)]
                && q.rhs == 0));
        }
    }

    #[test]
    fn non_orthomodular_rejected() {
        assert!(matches!(
            build_state_system(&o6()),
            Err(StateError::NotOrthomodular(_))
        ));
    }

    #[test]
    fn l12_quarter_state_passes_exactly() {
        let l = firefly_l12();
        let v = l12_valuation([
            ("l", Number::ratio(1, 4)),
            ("r", Number::ratio(1, 4)),
            ("f", Number::ratio(1, 4)),
            ("b", Number::ratio(1, 4)),
            ("n", Number::ratio(1, 2)),
        ]);
        let report = is_state(&l, &v, 0.0).unwrap();
        assert!(report.pass, "{:?}", report.violations);
        assert!(report.exact && report.bottom_zero);
        assert!(report.complement_failures.is_empty());
    }

    #[test]
    fn l12_all_half_fails_with_half_residual() {
        let l = firefly_l12();
        let half = || Number::ratio(1, 2);
        let v = l12_valuation([
            ("l", half()),
            ("r", half()),
            ("f", half()),
            ("b", half()),
            ("n", half()),
        ]);
        let report = is_state(&l, &v, 0.0).unwrap();
        assert!(!report.pass);
        let (lx, r) = (l.find("l").unwrap(), l.find("r").unwrap());
        let block = report
            .violations
            .iter()
            .find(|x| matches!(x.constraint, Constraint::Additivity { a, b, .. } if a == lx && b == r))
            .expect("l ⊥ r violated");
        assert_eq!(block.residual.abs(), Number::ratio(1, 2));
    }

    #[test]
    fn classical_measure_passes() {
        let p = powerset(2).unwrap();
        let v = Valuation::new(vec![
            Number::zero(),
            Number::Float(0.3),
            Number::Float(0.7),
            Number::one(),
        ]);
        assert!(is_state(&p, &v, 1e-9).unwrap().pass);
        let short = Valuation::new(vec![Number::zero()]);
        assert_eq!(
            is_state(&p, &short, 0.0).unwrap_err(),
            StateError::DomainMismatch {
                expected: 4,
                got: 1
            }
        );
    }

    #[test]
    fn bounds_are_checked() {
        let p = powerset(1).unwrap();
        let v = Valuation::new(vec![Number::ratio(-1, 2), Number::ratio(3, 2)]);
        let report = is_state(&p, &v, 0.0).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|x| x.constraint == Constraint::NonNegative(ElementId::new(0))));
        assert!(report
            .violations
            .iter()
            .any(|x| x.constraint == Constraint::AtMostOne(ElementId::new(1))
                && x.residual == Number::ratio(1, 2)));
        assert!(!report.bottom_zero);
    }
}
