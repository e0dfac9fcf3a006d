use std::cmp::Ordering;

use super::{join_s, meet_s, ortho_s, same_dimension, HilbertError, Subspace};
use crate::lattice::{attach_ortho, build_poset, lattice_check, ElementId, OrthoLattice};

/// Default element cap for [`generate_sublattice`].
pub const DEFAULT_CAP: usize = 256;

/// Projector entries closer than this compare equal when ordering elements.
const ORDER_TOL: f64 = 1e-9;

/// An abstract ortholattice together with the subspace realizing each element.
#[derive(Clone, Debug)]
pub struct GeneratedLattice {
    pub lattice: OrthoLattice,
    pub embedding: Vec<Subspace>,
}

impl GeneratedLattice {
    pub fn subspace(&self, e: ElementId) -> &Subspace {
        &self.embedding[e.index()]
    }

    /// The element realized by `s`, if any.
    pub fn locate(&self, s: &Subspace) -> Option<ElementId> {
        self.embedding.iter().position(|t| t.approx_eq(s)).map(ElementId::new)
    }
}

fn canonical_order(a: &Subspace, b: &Subspace) -> Ordering {
    a.dim().cmp(&b.dim()).then_with(|| {
        let (pa, pb) = (a.projector(), b.projector());
        for i in 0..pa.nrows() {
            for j in 0..pa.ncols() {
                let (x, y) = (pa[(i, j)], pb[(i, j)]);
                if (x.re - y.re).abs() > ORDER_TOL {
                    return x.re.total_cmp(&y.re);
                }
                if (x.im - y.im).abs() > ORDER_TOL {
                    return x.im.total_cmp(&y.im);
                }
            }
        }
        Ordering::Equal
    })
}

/// Closes `seeds` (plus the null and full subspaces) under meet, join and
/// orthocomplement, then builds the abstract ortholattice from inclusion.
///
/// Elements are ordered by dimension, then by the first projector entry that
/// differs; they are named `0`, `1` and `v{index}`. The result is checked to
/// be a faithful embedding before it is returned.
pub fn generate_sublattice(seeds: &[Subspace], cap: usize) -> Result<GeneratedLattice, HilbertError> {
    let d = seeds.first().map_or(1, Subspace::ambient);
    for s in seeds {
        same_dimension(d, s.ambient())?;
    }
    let mut elems: Vec<Subspace> = Vec::new();
    let add = |elems: &mut Vec<Subspace>, s: Subspace| -> Result<(), HilbertError> {
        if !elems.iter().any(|t| t.approx_eq(&s)) {
            if elems.len() == cap {
                return Err(HilbertError::CapExceeded { cap });
            }
            elems.push(s);
        }
        Ok(())
    };
    add(&mut elems, Subspace::null(d))?;
    add(&mut elems, Subspace::full(d))?;
    for s in seeds {
        add(&mut elems, s.clone())?;
    }
    let mut i = 0;
    while i < elems.len() {
        let complement = ortho_s(&elems[i]);
        add(&mut elems, complement)?;
        for j in 0..i {
            let (a, b) = (elems[i].clone(), elems[j].clone());
            add(&mut elems, meet_s(&a, &b)?)?;
            add(&mut elems, join_s(&a, &b)?)?;
        }
        i += 1;
    }
    elems.sort_by(canonical_order);

    let n = elems.len();
    let names: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n - 1 => "1".to_string(),
            i => format!("v{i}"),
        })
        .collect();
    let mut order = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && elems[a].dim() < elems[b].dim() && elems[a].is_subspace_of(&elems[b]) {
                order.push((ElementId::new(a), ElementId::new(b)));
            }
        }
    }
    let poset = build_poset(names, &order, None, None)?;
    let lattice = lattice_check(&poset)?;
    let generated = GeneratedLattice {
        lattice: lattice_with_ortho(lattice, &elems)?,
        embedding: elems,
    };
    verify_embedding(&generated)?;
    Ok(generated)
}

fn lattice_with_ortho(lattice: crate::lattice::Lattice, elems: &[Subspace]) -> Result<OrthoLattice, HilbertError> {
    let locate = |s: &Subspace| {
        elems
            .iter()
            .position(|t| t.approx_eq(s))
            .map(ElementId::new)
            .ok_or_else(|| HilbertError::NumericalBreakdown("closure lost an element".into()))
    };
    let mut pairs = Vec::new();
    for (i, s) in elems.iter().enumerate() {
        let j = locate(&ortho_s(s))?;
        if i <= j.index() {
            pairs.push((ElementId::new(i), j));
        }
    }
    Ok(attach_ortho(lattice, &pairs)?)
}

fn verify_embedding(g: &GeneratedLattice) -> Result<(), HilbertError> {
    let l = &g.lattice;
    for a in l.elements() {
        for b in l.elements().filter(|&b| b > a) {
            let (sa, sb) = (g.subspace(a), g.subspace(b));
            let meet_ok = g.subspace(l.meet(a, b)).approx_eq(&meet_s(sa, sb)?);
            let join_ok = g.subspace(l.join(a, b)).approx_eq(&join_s(sa, sb)?);
            if !(meet_ok && join_ok) {
                return Err(HilbertError::NumericalBreakdown(format!(
                    "embedding does not preserve meet/join of {} and {}",
                    l.name(a),
                    l.name(b)
                )));
            }
        }
    }
    Ok(())
}
