//! Canonical fixture lattices.

use thiserror::Error;

use crate::lattice::{
    attach_ortho, build_poset, lattice_check, ElementId, Lattice, LatticeError, OrthoLattice,
};

pub const POWERSET_MAX: usize = 12;
pub const MO_MAX: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("{builder}({n}) is outside the supported range 1..={max}")]
    CapExceeded {
        builder: &'static str,
        n: usize,
        max: usize,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Subset name such as `{}` or `{1,3}`; members are 1-based.
pub fn subset_name(mask: usize, n: usize) -> String {
    let members: Vec<String> = (0..n)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// Boolean lattice of all subsets of an `n`-set. Element `i` is the subset
/// with bitmask `i`.
pub fn powerset(n: usize) -> Result<OrthoLattice, BuildError> {
    if !(1..=POWERSET_MAX).contains(&n) {
        return Err(BuildError::CapExceeded {
            builder: "powerset",
            n,
            max: POWERSET_MAX,
        });
    }
    let size = 1usize << n;
    let names = (0..size).map(|m| subset_name(m, n)).collect();
    let mut covers = Vec::with_capacity(size * n / 2);
    for mask in 0..size {
        for bit in 0..n {
            if mask & (1 << bit) == 0 {
                covers.push((ElementId::new(mask), ElementId::new(mask | (1 << bit))));
            }
        }
    }
    let poset = build_poset(
        names,
        &covers,
        Some(ElementId::new(0)),
        Some(ElementId::new(size - 1)),
    )?;
    let lattice = lattice_check(&poset)?;
    let pairs: Vec<_> = (0..size / 2)
        .map(|m| (ElementId::new(m), ElementId::new((size - 1) ^ m)))
        .collect();
    Ok(attach_ortho(lattice, &pairs)?)
}

pub const L12_NAMES: [&str; 12] = [
    "0", "l", "r", "f", "b", "n", "¬l", "¬r", "¬f", "¬b", "¬n", "1",
];

/// The firefly lattice: two three-outcome experiments `{l, r, n}` and
/// `{f, b, n}` sharing the "no shine" outcome `n`.
pub fn firefly_l12() -> OrthoLattice {
    let names: Vec<String> = L12_NAMES.iter().map(|s| s.to_string()).collect();
    let id = |s: &str| ElementId::new(L12_NAMES.iter().position(|n| *n == s).unwrap());
    let mut covers = Vec::new();
    for atom in ["l", "r", "f", "b", "n"] {
        covers.push((id("0"), id(atom)));
    }
    for (lo, his) in [
        ("l", &["¬r", "¬n"][..]),
        ("r", &["¬l", "¬n"][..]),
        ("f", &["¬b", "¬n"][..]),
        ("b", &["¬f", "¬n"][..]),
        ("n", &["¬l", "¬r", "¬f", "¬b"][..]),
    ] {
        for hi in his {
            covers.push((id(lo), id(hi)));
        }
    }
    for coatom in ["¬l", "¬r", "¬f", "¬b", "¬n"] {
        covers.push((id(coatom), id("1")));
    }
    let poset = build_poset(names, &covers, Some(id("0")), Some(id("1"))).expect("L12 poset");
    let lattice = lattice_check(&poset).expect("L12 is a lattice");
    let pairs: Vec<_> = [("0", "1"), ("l", "¬l"), ("r", "¬r"), ("f", "¬f"), ("b", "¬b"), ("n", "¬n")]
        .iter()
        .map(|&(a, b)| (id(a), id(b)))
        .collect();
    attach_ortho(lattice, &pairs).expect("L12 orthocomplement")
}

/// The "Chinese lantern" MO(n): `n` complementary pairs of atoms between 0
/// and 1. Elements are ordered `0, a1, ¬a1, ..., an, ¬an, 1`.
pub fn mo(n: usize) -> Result<OrthoLattice, BuildError> {
    if !(1..=MO_MAX).contains(&n) {
        return Err(BuildError::CapExceeded {
            builder: "mo",
            n,
            max: MO_MAX,
        });
    }
    let mut names = vec!["0".to_string()];
    for i in 1..=n {
        names.push(format!("a{i}"));
        names.push(format!("¬a{i}"));
    }
    names.push("1".to_string());
    let top = ElementId::new(2 * n + 1);
    let bottom = ElementId::new(0);
    let mut covers = Vec::new();
    for i in 1..=2 * n {
        covers.push((bottom, ElementId::new(i)));
        covers.push((ElementId::new(i), top));
    }
    let poset = build_poset(names, &covers, Some(bottom), Some(top))?;
    let lattice = lattice_check(&poset)?;
    let mut pairs = vec![(bottom, top)];
    for i in 0..n {
        pairs.push((ElementId::new(2 * i + 1), ElementId::new(2 * i + 2)));
    }
    Ok(attach_ortho(lattice, &pairs)?)
}

/// The pentagon `0 < a < b < 1`, `0 < c < 1`.
pub fn n5() -> Lattice {
    let names = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
    let e = ElementId::new;
    let poset = build_poset(
        names,
        &[(e(0), e(1)), (e(1), e(2)), (e(2), e(4)), (e(0), e(3)), (e(3), e(4))],
        Some(e(0)),
        Some(e(4)),
    )
    .expect("N5 poset");
    lattice_check(&poset).expect("N5 is a lattice")
}

/// The hexagon `0 < a < b < 1`, `0 < ¬b < ¬a < 1` with its orthocomplement.
pub fn o6() -> OrthoLattice {
    let names = ["0", "a", "b", "¬b", "¬a", "1"].iter().map(|s| s.to_string()).collect();
    let e = ElementId::new;
    let poset = build_poset(
        names,
        &[
            (e(0), e(1)),
            (e(1), e(2)),
            (e(2), e(5)),
            (e(0), e(3)),
            (e(3), e(4)),
            (e(4), e(5)),
        ],
        Some(e(0)),
        Some(e(5)),
    )
    .expect("O6 poset");
    let lattice = lattice_check(&poset).expect("O6 is a lattice");
    attach_ortho(lattice, &[(e(0), e(5)), (e(1), e(4)), (e(2), e(3))]).expect("O6 orthocomplement")
}
