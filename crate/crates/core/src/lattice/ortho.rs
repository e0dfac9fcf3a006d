use std::fmt;


use super::{ElementId, Lattice, LatticeError, Poset};

/// One failed instance of the orthocomplement axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrthoViolation {
    /// No partner was declared for the element.
    Unpaired { element: ElementId },
    /// `neg(neg(a)) != a`, including an element paired with two partners.
    NotInvolutive { element: ElementId },
    /// `a <= b` but `neg(b) <= neg(a)` fails.
    NotOrderReversing { lower: ElementId, upper: ElementId },
    /// `a v neg(a) != 1` or `a ^ neg(a) != 0`.
    ComplementLawFails { element: ElementId },
}

impl fmt::Display for OrthoViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrthoViolation::Unpaired { element } => write!(f, "{element} has no complement"),
            OrthoViolation::NotInvolutive { element } => {
                write!(f, "neg(neg({element})) != {element}")
            }
            OrthoViolation::NotOrderReversing { lower, upper } => {
                write!(f, "{lower} <= {upper} but neg({upper}) </= neg({lower})")
            }
            OrthoViolation::ComplementLawFails { element } => {
                write!(f, "{element} and its complement do not join to 1 / meet to 0")
            }
        }
    }
}

fn neg_from_pairs(
    n: usize,
    pairs: &[(ElementId, ElementId)],
) -> Result<Vec<ElementId>, LatticeError> {
    let mut neg: Vec<Option<ElementId>> = vec![None; n];
    let mut violations = Vec::new();
    for &(a, b) in pairs {
        for e in [a, b] {
            if e.index() >= n {
                return Err(LatticeError::UnknownElement(e.index()));
            }
        }
        for (x, y) in [(a, b), (b, a)] {
            match neg[x.index()] {
                Some(prev) if prev != y => {
                    violations.push(OrthoViolation::NotInvolutive { element: x })
                }
                _ => neg[x.index()] = Some(y),
            }
        }
    }
    for (i, slot) in neg.iter().enumerate() {
        if slot.is_none() {
            violations.push(OrthoViolation::Unpaired {
                element: ElementId::new(i),
            });
        }
    }
    if !violations.is_empty() {
        return Err(LatticeError::NotOrthocomplemented(violations));
    }
    Ok(neg.into_iter().map(Option::unwrap).collect())
}

fn check_axioms(
    poset: &Poset,
    neg: &[ElementId],
    complement_ok: impl Fn(ElementId, ElementId) -> bool,
) -> Result<(), LatticeError> {
    let n = poset.len();
    if neg.len() != n {
        return Err(LatticeError::UnknownElement(neg.len().min(n)));
    }
    if let Some(bad) = neg.iter().find(|x| x.index() >= n) {
        return Err(LatticeError::UnknownElement(bad.index()));
    }
    let mut violations = Vec::new();
    for a in poset.elements() {
        if neg[neg[a.index()].index()] != a {
            violations.push(OrthoViolation::NotInvolutive { element: a });
        }
    }
    for a in poset.elements() {
        for b in poset.up_set(a).ones().map(ElementId::new) {
            if !poset.leq(neg[b.index()], neg[a.index()]) {
                violations.push(OrthoViolation::NotOrderReversing { lower: a, upper: b });
            }
        }
    }
    for a in poset.elements() {
        if !complement_ok(a, neg[a.index()]) {
            violations.push(OrthoViolation::ComplementLawFails { element: a });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(LatticeError::NotOrthocomplemented(violations))
    }
}

/// A lattice with a verified orthocomplementation.
#[derive(Clone, Debug)]
pub struct OrthoLattice {
    lattice: Lattice,
    neg: Vec<ElementId>,
}

/// Attaches the complement given as unordered pairs `(a, neg a)`, verifying all
/// four orthocomplement axioms exhaustively.
pub fn attach_ortho(
    lattice: Lattice,
    pairs: &[(ElementId, ElementId)],
) -> Result<OrthoLattice, LatticeError> {
    let neg = neg_from_pairs(lattice.len(), pairs)?;
    OrthoLattice::new(lattice, neg)
}

impl OrthoLattice {
    pub fn new(lattice: Lattice, neg: Vec<ElementId>) -> Result<Self, LatticeError> {
        let (top, bottom) = (lattice.top(), lattice.bottom());
        check_axioms(lattice.poset(), &neg, |a, na| {
            lattice.join(a, na) == top && lattice.meet(a, na) == bottom
        })?;
        Ok(OrthoLattice { lattice, neg })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn poset(&self) -> &Poset {
        self.lattice.poset()
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        self.lattice.elements()
    }

    pub fn name(&self, e: ElementId) -> &str {
        self.lattice.name(e)
    }

    pub fn find(&self, name: &str) -> Option<ElementId> {
        self.lattice.find(name)
    }

    pub fn bottom(&self) -> ElementId {
        self.lattice.bottom()
    }

    pub fn top(&self) -> ElementId {
        self.lattice.top()
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.lattice.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.lattice.meet(a, b)
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.lattice.join(a, b)
    }

    #[inline]
    pub fn neg(&self, a: ElementId) -> ElementId {
        self.neg[a.index()]
    }

    /// `a` is orthogonal to `b` iff `a <= neg(b)`.
    #[inline]
    pub fn orthogonal(&self, a: ElementId, b: ElementId) -> bool {
        self.leq(a, self.neg(b))
    }

    /// The complement as unordered pairs, lower index first.
    pub fn ortho_pairs(&self) -> Vec<(ElementId, ElementId)> {
        self.elements()
            .filter(|&a| a <= self.neg(a))
            .map(|a| (a, self.neg(a)))
            .collect()
    }

    pub fn to_ortho_poset(&self) -> OrthoPoset {
        OrthoPoset {
            poset: self.poset().clone(),
            neg: self.neg.clone(),
        }
    }
}

/// A bounded poset with an orthocomplementation; joins need not exist beyond
/// `a v neg(a)`.
#[derive(Clone, Debug)]
pub struct OrthoPoset {
    poset: Poset,
    neg: Vec<ElementId>,
}

impl OrthoPoset {
    pub fn new(poset: Poset, neg: Vec<ElementId>) -> Result<Self, LatticeError> {
        let (top, bottom) = (poset.top(), poset.bottom());
        check_axioms(&poset, &neg, |a, na| {
            poset.supremum(&[a, na]) == Some(top) && poset.infimum(&[a, na]) == Some(bottom)
        })?;
        Ok(OrthoPoset { poset, neg })
    }

    pub fn from_pairs(poset: Poset, pairs: &[(ElementId, ElementId)]) -> Result<Self, LatticeError> {
        let neg = neg_from_pairs(poset.len(), pairs)?;
        Self::new(poset, neg)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    #[inline]
    pub fn neg(&self, a: ElementId) -> ElementId {
        self.neg[a.index()]
    }

    #[inline]
    pub fn orthogonal(&self, a: ElementId, b: ElementId) -> bool {
        self.poset.leq(a, self.neg(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::testing::names;
    use crate::lattice::{build_poset, lattice_check};

    fn e(i: usize) -> ElementId {
        ElementId::new(i)
    }

    #[test]
    fn chain_fixed_point_fails_complement_law() {
        let p = build_poset(names(&["0", "a", "1"]), &[(e(0), e(1)), (e(1), e(2))], None, None)
            .unwrap();
        let l = lattice_check(&p).unwrap();
        let err = attach_ortho(l, &[(e(0), e(2)), (e(1), e(1))]).unwrap_err();
        let LatticeError::NotOrthocomplemented(v) = err else {
            panic!()
        };
        assert_eq!(v, vec![OrthoViolation::ComplementLawFails { element: e(1) }]);
    }

    #[test]
    fn square_with_wrong_pairing() {
        // 0 < a, b < 1; pairing a with 1 breaks every axiom family
        let p = build_poset(
            names(&["0", "a", "b", "1"]),
            &[(e(0), e(1)), (e(0), e(2)), (e(1), e(3)), (e(2), e(3))],
            None,
            None,
        )
        .unwrap();
        let l = lattice_check(&p).unwrap();
        let ok = attach_ortho(l.clone(), &[(e(0), e(3)), (e(1), e(2))]).unwrap();
        assert!(ok.orthogonal(e(1), e(2)));
        assert!(!ok.orthogonal(e(1), e(3)));

        let err = attach_ortho(l.clone(), &[(e(0), e(3)), (e(1), e(3))]).unwrap_err();
        let LatticeError::NotOrthocomplemented(v) = err else {
            panic!()
        };
        assert!(v.contains(&OrthoViolation::NotInvolutive { element: e(3) }));
        assert!(v.contains(&OrthoViolation::Unpaired { element: e(2) }));

        let err = attach_ortho(l, &[(e(0), e(1)), (e(2), e(3))]).unwrap_err();
        let LatticeError::NotOrthocomplemented(v) = err else {
            panic!()
        };
        assert!(v.contains(&OrthoViolation::NotOrderReversing {
            lower: e(0),
            upper: e(2)
        }));
        assert!(v.contains(&OrthoViolation::ComplementLawFails { element: e(0) }));
    }
}
