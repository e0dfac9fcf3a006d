use std::fmt;

use fixedbitset::FixedBitSet;

use super::{ElementId, LatticeError, Poset};

/// A poset whose pairwise meets and joins all exist, with both operations
/// memoized in dense tables.
#[derive(Clone, Debug)]
pub struct Lattice {
    poset: Poset,
    meet: Vec<u16>,
    join: Vec<u16>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

/// Why a poset failed to be a lattice: the pair lacks a unique extremal bound,
/// and `witnesses` are the incomparable maximal lower (or minimal upper)
/// bounds. An empty witness list means the pair has no common bound at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFailure {
    pub kind: BoundKind,
    pub pair: (ElementId, ElementId),
    pub witnesses: Vec<ElementId>,
}

impl fmt::Display for LatticeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            BoundKind::Meet => "meet",
            BoundKind::Join => "join",
        };
        write!(
            f,
            "{kind} of ({}, {}) is not unique; extremal bounds {:?}",
            self.pair.0,
            self.pair.1,
            self.witnesses.iter().map(|w| w.index()).collect::<Vec<_>>()
        )
    }
}

/// Computes meet and join tables by exhaustive bound search, or reports the
/// first pair (in index order) without a unique meet or join.
pub fn lattice_check(poset: &Poset) -> Result<Lattice, LatticeError> {
    Lattice::from_poset(poset.clone())
}

impl Lattice {
    pub fn from_poset(poset: Poset) -> Result<Self, LatticeError> {
        let n = poset.len();
        let counts_down: Vec<usize> = poset
            .elements()
            .map(|e| poset.down_set(e).count_ones(..))
            .collect();
        let counts_up: Vec<usize> = poset
            .elements()
            .map(|e| poset.up_set(e).count_ones(..))
            .collect();
        let mut meet = vec![0u16; n * n];
        let mut join = vec![0u16; n * n];
        let mut scratch = FixedBitSet::with_capacity(n);

        for a in 0..n {
            let ea = ElementId::new(a);
            for b in a..n {
                let eb = ElementId::new(b);
                let (m, j) = if poset.leq(ea, eb) {
                    (a, b)
                } else if poset.leq(eb, ea) {
                    (b, a)
                } else {
                    scratch.clone_from(poset.down_set(ea));
                    scratch.intersect_with(poset.down_set(eb));
                    let size = scratch.count_ones(..);
                    let m = scratch.ones().find(|&c| counts_down[c] == size).ok_or_else(|| {
                        LatticeError::NotALattice(LatticeFailure {
                            kind: BoundKind::Meet,
                            pair: (ea, eb),
                            witnesses: poset.maximal_of(&scratch),
                        })
                    })?;
                    scratch.clone_from(poset.up_set(ea));
                    scratch.intersect_with(poset.up_set(eb));
                    let size = scratch.count_ones(..);
                    let j = scratch.ones().find(|&c| counts_up[c] == size).ok_or_else(|| {
                        LatticeError::NotALattice(LatticeFailure {
                            kind: BoundKind::Join,
                            pair: (ea, eb),
                            witnesses: poset.minimal_of(&scratch),
                        })
                    })?;
                    (m, j)
                };
                meet[a * n + b] = m as u16;
                meet[b * n + a] = m as u16;
                join[a * n + b] = j as u16;
                join[b * n + a] = j as u16;
            }
        }
        Ok(Lattice { poset, meet, join })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        self.poset.elements()
    }

    pub fn name(&self, e: ElementId) -> &str {
        self.poset.name(e)
    }

    pub fn find(&self, name: &str) -> Option<ElementId> {
        self.poset.find(name)
    }

    pub fn bottom(&self) -> ElementId {
        self.poset.bottom()
    }

    pub fn top(&self) -> ElementId {
        self.poset.top()
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId::new(self.meet[a.index() * self.len() + b.index()] as usize)
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId::new(self.join[a.index() * self.len() + b.index()] as usize)
    }

    pub fn join_all(&self, family: impl IntoIterator<Item = ElementId>) -> ElementId {
        family
            .into_iter()
            .fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, family: impl IntoIterator<Item = ElementId>) -> ElementId {
        family.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Elements covering bottom.
    pub fn atoms(&self) -> Vec<ElementId> {
        let bottom = self.bottom();
        self.elements()
            .filter(|&x| x != bottom)
            .filter(|&x| {
                self.poset
                    .down_set(x)
                    .ones()
                    .all(|y| y == x.index() || y == bottom.index())
            })
            .collect()
    }

    /// Every nonzero element lies above some atom.
    pub fn is_atomic(&self) -> bool {
        let atoms = self.atoms();
        let bottom = self.bottom();
        self.elements()
            .filter(|&x| x != bottom)
            .all(|x| atoms.iter().any(|&a| self.leq(a, x)))
    }

    /// Every element is the join of the atoms below it.
    pub fn is_atomistic(&self) -> bool {
        let atoms = self.atoms();
        self.elements().all(|x| {
            let below = atoms.iter().copied().filter(|&a| self.leq(a, x));
            self.join_all(below) == x
        })
    }
}
