//! Axiom-ladder classification: distributive, modular, orthomodular and
//! boolean checks with re-checkable witnesses, plus compatibility and
//! maximal boolean blocks.
//!
//! Every scan is exhaustive and reports the first failing instance in
//! canonical index order.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::lattice::{
    attach_ortho, lattice_check, ElementId, Lattice, LatticeError, LatticeFailure, OrthoLattice,
    OrthoPoset, OrthoViolation, Poset,
};

/// Cap on the number of maximal blocks enumerated.
pub const MAX_BLOCKS: usize = 64;

/// Largest orthogonal family examined by [`check_sigma_omp`].
pub const SIGMA_FAMILY_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("lattice is not orthomodular: x = {} <= b = {} but x v (neg x ^ b) != b", .0.x, .0.b)]
    NotOrthomodular(OrthomodularWitness),
    #[error("more than {0} maximal blocks")]
    TooManyBlocks(usize),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DistributiveLaw {
    /// `x ^ (y v z) = (x ^ y) v (x ^ z)`
    D1,
    /// `x v (y ^ z) = (x v y) ^ (x v z)`
    D2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct DistributiveWitness {
    pub law: DistributiveLaw,
    pub x: ElementId,
    pub y: ElementId,
    pub z: ElementId,
}

impl DistributiveWitness {
    /// Both sides of the failing law, re-evaluated from the tables.
    pub fn sides(&self, lattice: &Lattice) -> (ElementId, ElementId) {
        distributive_sides(lattice, self.law, self.x, self.y, self.z)
    }
}

/// `x <= b` and `x v (a ^ b) != (x v a) ^ b`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ModularWitness {
    pub x: ElementId,
    pub a: ElementId,
    pub b: ElementId,
}

impl ModularWitness {
    pub fn sides(&self, lattice: &Lattice) -> (ElementId, ElementId) {
        (
            lattice.join(self.x, lattice.meet(self.a, self.b)),
            lattice.meet(lattice.join(self.x, self.a), self.b),
        )
    }
}

/// `x <= b` and `x v (neg x ^ b) != b`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct OrthomodularWitness {
    pub x: ElementId,
    pub b: ElementId,
}

impl OrthomodularWitness {
    pub fn lhs(&self, ortho: &OrthoLattice) -> ElementId {
        ortho.join(self.x, ortho.meet(ortho.neg(self.x), self.b))
    }
}

fn distributive_sides(
    l: &Lattice,
    law: DistributiveLaw,
    x: ElementId,
    y: ElementId,
    z: ElementId,
) -> (ElementId, ElementId) {
    match law {
        DistributiveLaw::D1 => (
            l.meet(x, l.join(y, z)),
            l.join(l.meet(x, y), l.meet(x, z)),
        ),
        DistributiveLaw::D2 => (
            l.join(x, l.meet(y, z)),
            l.meet(l.join(x, y), l.join(x, z)),
        ),
    }
}

pub fn check_distributive(lattice: &Lattice) -> Option<DistributiveWitness> {
    for x in lattice.elements() {
        for y in lattice.elements() {
            for z in lattice.elements() {
                for law in [DistributiveLaw::D1, DistributiveLaw::D2] {
                    let (lhs, rhs) = distributive_sides(lattice, law, x, y, z);
                    if lhs != rhs {
                        return Some(DistributiveWitness { law, x, y, z });
                    }
                }
            }
        }
    }
    None
}

pub fn check_modular(lattice: &Lattice) -> Option<ModularWitness> {
    for x in lattice.elements() {
        for b in lattice.poset().up_set(x).ones().map(ElementId::new) {
            for a in lattice.elements() {
                let w = ModularWitness { x, a, b };
                let (lhs, rhs) = w.sides(lattice);
                if lhs != rhs {
                    return Some(w);
                }
            }
        }
    }
    None
}

pub fn check_orthomodular(ortho: &OrthoLattice) -> Option<OrthomodularWitness> {
    for x in ortho.elements() {
        for b in ortho.poset().up_set(x).ones().map(ElementId::new) {
            let w = OrthomodularWitness { x, b };
            if w.lhs(ortho) != b {
                return Some(w);
            }
        }
    }
    None
}

pub(crate) fn require_orthomodular(ortho: &OrthoLattice) -> Result<(), ClassifyError> {
    match check_orthomodular(ortho) {
        Some(w) => Err(ClassifyError::NotOrthomodular(w)),
        None => Ok(()),
    }
}

#[inline]
pub(crate) fn compatible_unchecked(ortho: &OrthoLattice, a: ElementId, b: ElementId) -> bool {
    ortho.join(ortho.meet(a, b), ortho.meet(a, ortho.neg(b))) == a
}

/// `a` is compatible with `b` iff `a = (a ^ b) v (a ^ neg b)`.
pub fn compatible(ortho: &OrthoLattice, a: ElementId, b: ElementId) -> Result<bool, ClassifyError> {
    require_orthomodular(ortho)?;
    Ok(compatible_unchecked(ortho, a, b))
}

/// Maximal boolean sublattices, each sorted by index and the list sorted
/// lexicographically.
///
/// In an orthomodular lattice a set of pairwise compatible elements generates
/// a boolean subalgebra, so the blocks are exactly the maximal cliques of the
/// compatibility graph.
pub fn maximal_blocks(ortho: &OrthoLattice) -> Result<Vec<Vec<ElementId>>, ClassifyError> {
    require_orthomodular(ortho)?;
    let n = ortho.len();
    let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
    for a in ortho.elements() {
        for b in ortho.elements().filter(|&b| b > a) {
            if compatible_unchecked(ortho, a, b) {
                adjacency[a.index()].insert(b.index());
                adjacency[b.index()].insert(a.index());
            }
        }
    }
    let mut candidates = FixedBitSet::with_capacity(n);
    candidates.insert_range(..);
    let mut blocks = Vec::new();
    bron_kerbosch(
        &adjacency,
        &mut Vec::new(),
        candidates,
        FixedBitSet::with_capacity(n),
        &mut blocks,
    )?;
    let mut blocks: Vec<Vec<ElementId>> = blocks
        .into_iter()
        .map(|mut b: Vec<usize>| {
            b.sort_unstable();
            b.into_iter().map(ElementId::new).collect()
        })
        .collect();
    blocks.sort();
    Ok(blocks)
}

fn bron_kerbosch(
    adjacency: &[FixedBitSet],
    clique: &mut Vec<usize>,
    mut candidates: FixedBitSet,
    mut excluded: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) -> Result<(), ClassifyError> {
    if candidates.is_clear() {
        if excluded.is_clear() {
            if out.len() == MAX_BLOCKS {
                return Err(ClassifyError::TooManyBlocks(MAX_BLOCKS));
            }
            out.push(clique.clone());
        }
        return Ok(());
    }
    let pivot = candidates
        .union(&excluded)
        .max_by_key(|&u| {
            (
                adjacency[u].intersection(&candidates).count(),
                std::cmp::Reverse(u),
            )
        })
        .expect("non-empty");
    let branch: Vec<usize> = candidates.difference(&adjacency[pivot]).collect();
    for v in branch {
        let mut next_candidates = candidates.clone();
        next_candidates.intersect_with(&adjacency[v]);
        let mut next_excluded = excluded.clone();
        next_excluded.intersect_with(&adjacency[v]);
        clique.push(v);
        bron_kerbosch(adjacency, clique, next_candidates, next_excluded, out)?;
        clique.pop();
        candidates.set(v, false);
        excluded.insert(v);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaOmpWitness {
    /// A pairwise orthogonal family without a least upper bound.
    MissingJoin(Vec<ElementId>),
    /// `x <= b` but `x v neg(x v neg b) != b`.
    OrthomodularFails { x: ElementId, b: ElementId },
}

/// Checks the orthomodular identity on comparable pairs and the existence of
/// joins of pairwise orthogonal families (up to [`SIGMA_FAMILY_CAP`]
/// members) on an orthocomplemented poset.
pub fn check_sigma_omp(op: &OrthoPoset) -> Option<SigmaOmpWitness> {
    let poset = op.poset();
    for x in poset.elements() {
        for b in poset.up_set(x).ones().map(ElementId::new) {
            let nb = op.neg(b);
            let Some(j) = poset.supremum(&[x, nb]) else {
                return Some(SigmaOmpWitness::MissingJoin(vec![x, nb]));
            };
            let m = op.neg(j);
            let Some(k) = poset.supremum(&[x, m]) else {
                return Some(SigmaOmpWitness::MissingJoin(vec![x, m]));
            };
            if k != b {
                return Some(SigmaOmpWitness::OrthomodularFails { x, b });
            }
        }
    }
    if lattice_check(poset).is_ok() {
        return None;
    }
    let bottom = poset.bottom();
    let members: Vec<ElementId> = poset.elements().filter(|&e| e != bottom).collect();
    let mut family = Vec::new();
    orthogonal_family_search(op, &members, 0, &mut family)
}

fn orthogonal_family_search(
    op: &OrthoPoset,
    members: &[ElementId],
    start: usize,
    family: &mut Vec<ElementId>,
) -> Option<SigmaOmpWitness> {
    if family.len() >= 2 && op.poset().supremum(family).is_none() {
        return Some(SigmaOmpWitness::MissingJoin(family.clone()));
    }
    if family.len() == SIGMA_FAMILY_CAP {
        return None;
    }
    for i in start..members.len() {
        let c = members[i];
        if family.iter().all(|&f| op.orthogonal(f, c)) {
            family.push(c);
            if let Some(w) = orthogonal_family_search(op, members, i + 1, family) {
                return Some(w);
            }
            family.pop();
        }
    }
    None
}

/// Which laws hold, with one witness per failed law.
#[derive(Clone, Debug, Default)]
pub struct ClassificationReport {
    pub is_lattice: bool,
    pub is_ortholattice: bool,
    pub is_distributive: bool,
    pub is_modular: bool,
    pub is_orthomodular: bool,
    pub is_boolean: bool,
    pub is_atomic: bool,
    pub is_atomistic: bool,
    pub atoms: Vec<ElementId>,
    pub blocks: Vec<Vec<ElementId>>,
    pub witnesses: Witnesses,
}

#[derive(Clone, Debug, Default)]
pub struct Witnesses {
    pub lattice: Option<LatticeFailure>,
    pub ortholattice: Option<Vec<OrthoViolation>>,
    pub distributive: Option<DistributiveWitness>,
    pub modular: Option<ModularWitness>,
    pub orthomodular: Option<OrthomodularWitness>,
}

/// Classifies a poset with an optional orthocomplement given as pairs.
pub fn classify_poset(
    poset: &Poset,
    ortho_pairs: Option<&[(ElementId, ElementId)]>,
) -> ClassificationReport {
    let mut report = ClassificationReport::default();
    let lattice = match lattice_check(poset) {
        Ok(l) => l,
        Err(LatticeError::NotALattice(failure)) => {
            report.witnesses.lattice = Some(failure);
            return report;
        }
        Err(_) => unreachable!("lattice_check only fails with NotALattice"),
    };
    match ortho_pairs {
        None => classify_lattice(&lattice),
        Some(pairs) => match attach_ortho(lattice.clone(), pairs) {
            Ok(ortho) => classify(&ortho),
            Err(err) => {
                let mut report = classify_lattice(&lattice);
                if let LatticeError::NotOrthocomplemented(v) = err {
                    report.witnesses.ortholattice = Some(v);
                }
                report
            }
        },
    }
}

/// Classification of a lattice without an orthocomplement.
pub fn classify_lattice(lattice: &Lattice) -> ClassificationReport {
    let distributive = check_distributive(lattice);
    let modular = if distributive.is_none() {
        None
    } else {
        check_modular(lattice)
    };
    ClassificationReport {
        is_lattice: true,
        is_ortholattice: false,
        is_distributive: distributive.is_none(),
        is_modular: modular.is_none(),
        is_orthomodular: false,
        is_boolean: false,
        is_atomic: lattice.is_atomic(),
        is_atomistic: lattice.is_atomistic(),
        atoms: lattice.atoms(),
        blocks: Vec::new(),
        witnesses: Witnesses {
            distributive,
            modular,
            ..Witnesses::default()
        },
    }
}

/// Full ladder classification of an ortholattice, including blocks when it is
/// orthomodular.
pub fn classify(ortho: &OrthoLattice) -> ClassificationReport {
    let mut report = classify_lattice(ortho.lattice());
    report.is_ortholattice = true;
    let orthomodular = check_orthomodular(ortho);
    report.is_orthomodular = orthomodular.is_none();
    report.witnesses.orthomodular = orthomodular;
    report.is_boolean = report.is_distributive;
    if report.is_orthomodular {
        // Only TooManyBlocks can fail here; the report then carries no blocks.
        report.blocks = maximal_blocks(ortho).unwrap_or_default();
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{firefly_l12, mo, n5, o6, powerset};
    use crate::lattice::build_poset;
    use crate::lattice::testing::names;

    fn by_name(o: &OrthoLattice, s: &str) -> ElementId {
        o.find(s).unwrap()
    }

    #[test]
    fn l12_is_orthomodular_not_distributive() {
        let l = firefly_l12();
        assert!(check_distributive(l.lattice()).is_some());
        assert!(check_orthomodular(&l).is_none());
    }

    #[test]
    fn mo2_distributive_witness() {
        let m = mo(2).unwrap();
        let w = check_distributive(m.lattice()).unwrap();
        let (lhs, rhs) = w.sides(m.lattice());
        assert_ne!(lhs, rhs);
        // the textbook triple (a, b, ¬b)
        let (a, b, nb) = (by_name(&m, "a1"), by_name(&m, "a2"), by_name(&m, "¬a2"));
        let lat = m.lattice();
        assert_eq!(lat.meet(a, lat.join(b, nb)), a);
        assert_eq!(lat.join(lat.meet(a, b), lat.meet(a, nb)), m.bottom());
    }

    #[test]
    fn n5_modular_witness_rechecks() {
        let l = n5();
        assert!(check_distributive(&l).is_some());
        let w = check_modular(&l).unwrap();
        assert!(l.leq(w.x, w.b));
        let (lhs, rhs) = w.sides(&l);
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn o6_orthomodular_witness_rechecks() {
        let o = o6();
        let w = check_orthomodular(&o).unwrap();
        assert!(o.leq(w.x, w.b));
        assert_ne!(w.lhs(&o), w.b);
        assert_eq!((o.name(w.x), o.name(w.b)), ("a", "b"));
    }

    #[test]
    fn compatibility_in_l12() {
        let l = firefly_l12();
        let (lx, r, f) = (by_name(&l, "l"), by_name(&l, "r"), by_name(&l, "f"));
        assert!(compatible(&l, lx, r).unwrap());
        assert!(!compatible(&l, lx, f).unwrap());
        assert!(matches!(
            compatible(&o6(), ElementId::new(1), ElementId::new(2)),
            Err(ClassifyError::NotOrthomodular(_))
        ));
    }

    #[test]
    fn blocks() {
        let l = firefly_l12();
        let blocks = maximal_blocks(&l).unwrap();
        let named: Vec<Vec<&str>> = blocks
            .iter()
            .map(|b| b.iter().map(|&e| l.name(e)).collect())
            .collect();
        assert_eq!(
            named,
            vec![
                vec!["0", "l", "r", "n", "¬l", "¬r", "¬n", "1"],
                vec!["0", "f", "b", "n", "¬f", "¬b", "¬n", "1"],
            ]
        );
        assert_eq!(maximal_blocks(&powerset(3).unwrap()).unwrap().len(), 1);
        let m3 = maximal_blocks(&mo(3).unwrap()).unwrap();
        assert_eq!(m3.len(), 3);
        assert!(m3.iter().all(|b| b.len() == 4));
    }

    #[test]
    fn sigma_omp_on_lattices() {
        assert_eq!(check_sigma_omp(&firefly_l12().to_ortho_poset()), None);
        assert_eq!(check_sigma_omp(&powerset(3).unwrap().to_ortho_poset()), None);
        assert!(matches!(
            check_sigma_omp(&o6().to_ortho_poset()),
            Some(SigmaOmpWitness::OrthomodularFails { .. })
        ));
    }

    #[test]
    fn sigma_omp_missing_join() {
        // atoms a, b, c, d with every pair orthogonal except (c, d); both ¬c
        // and ¬d bound the orthogonal pair {a, b} and are incomparable
        let e = ElementId::new;
        let list = ["0", "a", "b", "c", "d", "¬a", "¬b", "¬c", "¬d", "1"];
        let idx = |s: &str| e(list.iter().position(|x| *x == s).unwrap());
        let mut covers = Vec::new();
        for x in ["a", "b", "c", "d"] {
            covers.push((idx("0"), idx(x)));
            covers.push((idx(&format!("¬{x}")), idx("1")));
        }
        for (x, y) in [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")] {
            covers.push((idx(x), idx(&format!("¬{y}"))));
            covers.push((idx(y), idx(&format!("¬{x}"))));
        }
        let poset = build_poset(names(&list), &covers, None, None).unwrap();
        assert!(lattice_check(&poset).is_err());
        let pairs: Vec<_> = [("0", "1"), ("a", "¬a"), ("b", "¬b"), ("c", "¬c"), ("d", "¬d")]
            .iter()
            .map(|&(x, y)| (idx(x), idx(y)))
            .collect();
        let op = OrthoPoset::from_pairs(poset.clone(), &pairs).unwrap();
        assert!(op.orthogonal(idx("a"), idx("b")));
        match check_sigma_omp(&op) {
            Some(SigmaOmpWitness::MissingJoin(family)) => {
                assert_eq!(family, vec![idx("a"), idx("b")]);
                assert!(poset.supremum(&family).is_none());
                let bounds = poset.upper_bounds(&family);
                assert_eq!(poset.minimal_of(&bounds), vec![idx("¬c"), idx("¬d")]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn report_for_non_lattice() {
        let e = ElementId::new;
        let poset = build_poset(
            names(&["0", "x", "y", "p", "q", "1"]),
            &[
                (e(0), e(1)),
                (e(0), e(2)),
                (e(1), e(3)),
                (e(1), e(4)),
                (e(2), e(3)),
                (e(2), e(4)),
                (e(3), e(5)),
                (e(4), e(5)),
            ],
            None,
            None,
        )
        .unwrap();
        let r = classify_poset(&poset, None);
        assert!(!r.is_lattice && !r.is_modular && !r.is_boolean);
        assert!(r.witnesses.lattice.is_some());
    }
}
