use super::system::is_state;
use super::{StateError, Valuation};
use crate::lattice::{ElementId, OrthoLattice};
use crate::number::Number;

#[derive(Clone, Debug, PartialEq)]
pub struct InclusionExclusionViolation {
    pub a: ElementId,
    pub b: ElementId,
    /// `s(a) + s(b) - s(a ∧ b) - s(a ∨ b)`
    pub defect: Number,
    /// `(a ∧ b) ∨ (a ∧ ¬b) < a`
    pub strict_decomposition: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubadditivityViolation {
    pub a: ElementId,
    pub b: ElementId,
    pub join: ElementId,
    /// `s(a ∨ b) - s(a) - s(b)`, positive.
    pub defect: Number,
}

/// A state and ordered pair with `s(a ∧ b) + s(a ∧ ¬b) < s(a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionWitness {
    pub a: ElementId,
    pub b: ElementId,
    /// `s(a) - s(a ∧ b) - s(a ∧ ¬b)`, positive.
    pub gap: Number,
}

fn require_state(ortho: &OrthoLattice, v: &Valuation, tolerance: f64) -> Result<(), StateError> {
    let report = is_state(ortho, v, tolerance)?;
    if report.pass {
        Ok(())
    } else {
        Err(StateError::NotAState(Box::new(report)))
    }
}

fn pairs(ortho: &OrthoLattice) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
    ortho
        .elements()
        .flat_map(move |a| ortho.elements().filter(move |&b| b > a).map(move |b| (a, b)))
}

/// Unordered pairs where inclusion-exclusion fails by more than `tolerance`.
pub fn inclusion_exclusion_scan(
    ortho: &OrthoLattice,
    v: &Valuation,
    tolerance: f64,
) -> Result<Vec<InclusionExclusionViolation>, StateError> {
    require_state(ortho, v, tolerance)?;
    Ok(pairs(ortho)
        .filter_map(|(a, b)| {
            let (m, j) = (ortho.meet(a, b), ortho.join(a, b));
            let defect = &(&(v.get(a) + v.get(b)) - v.get(m)) - v.get(j);
            if !defect.exceeds(tolerance) {
                return None;
            }
            let split = ortho.join(m, ortho.meet(a, ortho.neg(b)));
            Some(InclusionExclusionViolation {
                a,
                b,
                defect,
                strict_decomposition: split != a,
            })
        })
        .collect())
}

/// Unordered pairs with `s(a ∨ b) > s(a) + s(b) + tolerance`.
pub fn subadditivity_scan(
    ortho: &OrthoLattice,
    v: &Valuation,
    tolerance: f64,
) -> Result<Vec<SubadditivityViolation>, StateError> {
    require_state(ortho, v, tolerance)?;
    Ok(pairs(ortho)
        .filter_map(|(a, b)| {
            let join = ortho.join(a, b);
            let defect = &(v.get(join) - v.get(a)) - v.get(b);
            defect.gt_f64(tolerance).then_some(SubadditivityViolation { a, b, join, defect })
        })
        .collect())
}

/// Ordered pairs with `s(a ∧ b) + s(a ∧ ¬b) < s(a) - tolerance`.
pub fn decomposition_scan(
    ortho: &OrthoLattice,
    v: &Valuation,
    tolerance: f64,
) -> Result<Vec<DecompositionWitness>, StateError> {
    require_state(ortho, v, tolerance)?;
    let mut out = Vec::new();
    for a in ortho.elements() {
        for b in ortho.elements() {
            let gap = &(v.get(a) - v.get(ortho.meet(a, b))) - v.get(ortho.meet(a, ortho.neg(b)));
            if gap.gt_f64(tolerance) {
                out.push(DecompositionWitness { a, b, gap });
            }
        }
    }
    Ok(out)
}
