use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{ElementId, LatticeError, MAX_ELEMENTS};

/// A finite bounded partial order stored as a dense reflexive-transitive
/// relation.
#[derive(Clone, Debug)]
pub struct Poset {
    names: Vec<String>,
    // up[a] = { b : a <= b }, down[b] = { a : a <= b }
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    bottom: ElementId,
    top: ElementId,
}

/// Builds a poset from a covering (Hasse) relation.
///
/// `covers` may contain redundant transitive pairs; the order is their
/// reflexive-transitive closure. When `bottom` or `top` is `None` the bound is
/// inferred from the closure.
pub fn build_poset(
    names: Vec<String>,
    covers: &[(ElementId, ElementId)],
    bottom: Option<ElementId>,
    top: Option<ElementId>,
) -> Result<Poset, LatticeError> {
    let n = names.len();
    if n > MAX_ELEMENTS {
        return Err(LatticeError::CapExceeded {
            size: n,
            cap: MAX_ELEMENTS,
        });
    }
    if n < 2 {
        return Err(LatticeError::Degenerate);
    }
    let mut seen = HashMap::with_capacity(n);
    for (i, name) in names.iter().enumerate() {
        if seen.insert(name.as_str(), i).is_some() {
            return Err(LatticeError::DuplicateElement(name.clone()));
        }
    }

    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for &(lo, hi) in covers {
        for e in [lo, hi] {
            if e.index() >= n {
                return Err(LatticeError::UnknownElement(e.index()));
            }
        }
        if lo == hi {
            return Err(LatticeError::SelfCover(names[lo.index()].clone()));
        }
        if !succ[lo.index()].contains(&hi.index()) {
            succ[lo.index()].push(hi.index());
            indegree[hi.index()] += 1;
        }
    }

    // Kahn's algorithm; leftovers sit on or behind a cycle.
    let mut order = Vec::with_capacity(n);
    let mut remaining = indegree.clone();
    let mut stack: Vec<usize> = (0..n).rev().filter(|&v| remaining[v] == 0).collect();
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in succ[v].iter().rev() {
            remaining[w] -= 1;
            if remaining[w] == 0 {
                stack.push(w);
            }
        }
    }
    if order.len() < n {
        let (a, b) = find_cycle_edge(&succ, &remaining);
        return Err(LatticeError::CycleDetected(
            names[a].clone(),
            names[b].clone(),
        ));
    }

    let mut up: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
    for &v in order.iter().rev() {
        let mut row = FixedBitSet::with_capacity(n);
        row.insert(v);
        for &w in &succ[v] {
            row.union_with(&up[w]);
        }
        up[v] = row;
    }
    let mut down: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
    for (a, row) in up.iter().enumerate() {
        for b in row.ones() {
            down[b].insert(a);
        }
    }

    let bottom = match bottom {
        Some(b) => {
            check_index(b, n)?;
            if let Some(w) = (0..n).find(|&x| !up[b.index()].contains(x)) {
                return Err(LatticeError::NotBounded {
                    bound: "bottom",
                    element: names[b.index()].clone(),
                    witness: names[w].clone(),
                });
            }
            b
        }
        None => ElementId::new(
            (0..n)
                .find(|&x| up[x].count_ones(..) == n)
                .ok_or(LatticeError::NoBound("bottom"))?,
        ),
    };
    let top = match top {
        Some(t) => {
            check_index(t, n)?;
            if let Some(w) = (0..n).find(|&x| !down[t.index()].contains(x)) {
                return Err(LatticeError::NotBounded {
                    bound: "top",
                    element: names[t.index()].clone(),
                    witness: names[w].clone(),
                });
            }
            t
        }
        None => ElementId::new(
            (0..n)
                .find(|&x| down[x].count_ones(..) == n)
                .ok_or(LatticeError::NoBound("top"))?,
        ),
    };

    Ok(Poset {
        names,
        up,
        down,
        bottom,
        top,
    })
}

fn check_index(e: ElementId, n: usize) -> Result<(), LatticeError> {
    if e.index() >= n {
        Err(LatticeError::UnknownElement(e.index()))
    } else {
        Ok(())
    }
}

/// Walks successors among the nodes Kahn's algorithm could not schedule until
/// a node repeats, and returns one edge of the cycle found.
fn find_cycle_edge(succ: &[Vec<usize>], remaining: &[usize]) -> (usize, usize) {
    let stuck = |v: usize| remaining[v] > 0;
    let start = (0..succ.len()).find(|&v| stuck(v)).expect("a stuck node");
    let mut visited = vec![usize::MAX; succ.len()];
    let mut path = vec![start];
    visited[start] = 0;
    let mut v = start;
    loop {
        // every stuck node has a stuck predecessor; walk predecessors instead
        // of successors so the walk never leaves the stuck set.
        let prev = (0..succ.len())
            .find(|&u| stuck(u) && succ[u].contains(&v))
            .expect("stuck node has a stuck predecessor");
        if visited[prev] != usize::MAX {
            // prev -> v is an edge on the cycle
            return (prev, v);
        }
        visited[prev] = path.len();
        path.push(prev);
        v = prev;
    }
}

impl Poset {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: ElementId) -> &str {
        &self.names[e.index()]
    }

    pub fn find(&self, name: &str) -> Option<ElementId> {
        self.names.iter().position(|n| n == name).map(ElementId::new)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.names.len()).map(ElementId::new)
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.up[a.index()].contains(b.index())
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: ElementId, b: ElementId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `{ b : a <= b }`
    pub fn up_set(&self, a: ElementId) -> &FixedBitSet {
        &self.up[a.index()]
    }

    /// `{ b : b <= a }`
    pub fn down_set(&self, a: ElementId) -> &FixedBitSet {
        &self.down[a.index()]
    }

    /// The Hasse covering pairs `(lo, hi)` in index order.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            let mut strict = self.up[a].clone();
            strict.set(a, false);
            for b in strict.ones() {
                if self.down[b].intersection(&strict).count() == 1 {
                    out.push((ElementId::new(a), ElementId::new(b)));
                }
            }
        }
        out
    }

    /// Length (in cover steps) of the longest chain from bottom to top.
    pub fn height(&self) -> usize {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| self.down[x].count_ones(..));
        let mut depth = vec![0usize; self.len()];
        for (lo, hi) in self.covers_sorted(&order) {
            depth[hi] = depth[hi].max(depth[lo] + 1);
        }
        depth[self.top.index()]
    }

    fn covers_sorted(&self, order: &[usize]) -> Vec<(usize, usize)> {
        let covers = self.covers();
        let mut rank = vec![0usize; self.len()];
        for (pos, &x) in order.iter().enumerate() {
            rank[x] = pos;
        }
        let mut pairs: Vec<(usize, usize)> = covers
            .into_iter()
            .map(|(a, b)| (a.index(), b.index()))
            .collect();
        pairs.sort_by_key(|&(a, _)| rank[a]);
        pairs
    }

    /// Least element of `set`, if one exists.
    pub fn least_of(&self, set: &FixedBitSet) -> Option<ElementId> {
        let size = set.count_ones(..);
        set.ones()
            .find(|&m| self.up[m].intersection(set).count() == size)
            .map(ElementId::new)
    }

    /// Greatest element of `set`, if one exists.
    pub fn greatest_of(&self, set: &FixedBitSet) -> Option<ElementId> {
        let size = set.count_ones(..);
        set.ones()
            .find(|&m| self.down[m].intersection(set).count() == size)
            .map(ElementId::new)
    }

    pub fn minimal_of(&self, set: &FixedBitSet) -> Vec<ElementId> {
        set.ones()
            .filter(|&m| self.down[m].intersection(set).count() == 1)
            .map(ElementId::new)
            .collect()
    }

    pub fn maximal_of(&self, set: &FixedBitSet) -> Vec<ElementId> {
        set.ones()
            .filter(|&m| self.up[m].intersection(set).count() == 1)
            .map(ElementId::new)
            .collect()
    }

    /// Common upper bounds of a family.
    pub fn upper_bounds(&self, family: &[ElementId]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        set.insert_range(..);
        for &a in family {
            set.intersect_with(&self.up[a.index()]);
        }
        set
    }

    /// Common lower bounds of a family.
    pub fn lower_bounds(&self, family: &[ElementId]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        set.insert_range(..);
        for &a in family {
            set.intersect_with(&self.down[a.index()]);
        }
        set
    }

    /// Least upper bound of a family, when it exists.
    pub fn supremum(&self, family: &[ElementId]) -> Option<ElementId> {
        if family.is_empty() {
            return Some(self.bottom);
        }
        self.least_of(&self.upper_bounds(family))
    }

    /// Greatest lower bound of a family, when it exists.
    pub fn infimum(&self, family: &[ElementId]) -> Option<ElementId> {
        if family.is_empty() {
            return Some(self.top);
        }
        self.greatest_of(&self.lower_bounds(family))
    }

    /// The full order as a dense boolean matrix, row `a` holding `a <= b`.
    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        self.up
            .iter()
            .map(|row| (0..n).map(|b| row.contains(b)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::testing::names;

    fn e(i: usize) -> ElementId {
        ElementId::new(i)
    }

    #[test]
    fn three_chain_is_transitive() {
        let p = build_poset(names(&["0", "a", "1"]), &[(e(0), e(1)), (e(1), e(2))], None, None)
            .unwrap();
        assert!(p.leq(e(0), e(2)));
        assert!(!p.leq(e(2), e(0)));
        assert_eq!(p.bottom(), e(0));
        assert_eq!(p.top(), e(2));
        assert_eq!(p.height(), 2);
    }

    #[test]
    fn mutual_covers_are_a_cycle() {
        let err = build_poset(
            names(&["0", "a", "b", "1"]),
            &[(e(1), e(2)), (e(2), e(1)), (e(0), e(1)), (e(2), e(3))],
            None,
            None,
        )
        .unwrap_err();
        match err {
            LatticeError::CycleDetected(x, y) => {
                let mut pair = [x, y];
                pair.sort();
                assert_eq!(pair, ["a".to_string(), "b".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn longer_cycle_reports_a_cycle_edge() {
        let err = build_poset(
            names(&["0", "a", "b", "c", "1"]),
            &[(e(0), e(1)), (e(1), e(2)), (e(2), e(3)), (e(3), e(1)), (e(3), e(4))],
            None,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::CycleDetected(..)));
    }

    #[test]
    fn declared_bounds_are_verified() {
        let err = build_poset(
            names(&["0", "a", "b", "1"]),
            &[(e(0), e(1)), (e(1), e(3)), (e(2), e(3))],
            Some(e(0)),
            Some(e(3)),
        )
        .unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotBounded {
                bound: "bottom",
                element: "0".into(),
                witness: "b".into()
            }
        );
        let err = build_poset(
            names(&["0", "a", "b"]),
            &[(e(0), e(1)), (e(0), e(2))],
            None,
            None,
        )
        .unwrap_err();
        assert_eq!(err, LatticeError::NoBound("top"));
    }

    #[test]
    fn input_errors() {
        assert_eq!(
            build_poset(names(&["a", "a"]), &[], None, None).unwrap_err(),
            LatticeError::DuplicateElement("a".into())
        );
        assert_eq!(
            build_poset(names(&["a", "b"]), &[(e(0), e(0))], None, None).unwrap_err(),
            LatticeError::SelfCover("a".into())
        );
        assert_eq!(
            build_poset(names(&["a", "b"]), &[(e(0), e(5))], None, None).unwrap_err(),
            LatticeError::UnknownElement(5)
        );
        assert_eq!(
            build_poset(names(&["a"]), &[], None, None).unwrap_err(),
            LatticeError::Degenerate
        );
    }

    #[test]
    fn covers_drop_transitive_pairs() {
        let p = build_poset(
            names(&["0", "a", "1"]),
            &[(e(0), e(1)), (e(1), e(2)), (e(0), e(2))],
            None,
            None,
        )
        .unwrap();
        assert_eq!(p.covers(), vec![(e(0), e(1)), (e(1), e(2))]);
    }
}
