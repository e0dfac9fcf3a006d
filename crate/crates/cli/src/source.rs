//! Lattice sources: built-in constructions or `.lat` files.

use std::fs;

use qlogic::builders::{firefly_l12, mo, n5, o6, powerset};
use qlogic::io::{parse_lattice, LatticeDocument};
use qlogic::lattice::ElementId;
use qlogic::{OrthoLattice, Poset};

use crate::Failure;

/// A named poset with an optional complement.
pub struct Source {
    pub name: String,
    pub poset: Poset,
    pub ortho_pairs: Option<Vec<(ElementId, ElementId)>>,
}

fn builder_arg(spec: &str, prefix: &str) -> Result<Option<usize>, Failure> {
    match spec.strip_prefix(prefix) {
        None => Ok(None),
        Some(n) => n
            .parse()
            .map(Some)
            .map_err(|_| Failure::usage(format!("`{spec}`: expected {prefix}<n>"))),
    }
}

fn from_ortho(name: String, o: OrthoLattice) -> Source {
    Source {
        name,
        poset: o.poset().clone(),
        ortho_pairs: Some(o.ortho_pairs()),
    }
}

/// `powerset:<n>`, `mo:<n>`, `l12`, `n5`, `o6`, or a path to a `.lat` file.
pub fn load(spec: &str) -> Result<Source, Failure> {
    let built = |r: Result<OrthoLattice, _>| r.map_err(|e: qlogic::builders::BuildError| Failure::usage(e.to_string()));
    if let Some(n) = builder_arg(spec, "powerset:")? {
        return Ok(from_ortho(format!("powerset{n}"), built(powerset(n))?));
    }
    if let Some(n) = builder_arg(spec, "mo:")? {
        return Ok(from_ortho(format!("mo{n}"), built(mo(n))?));
    }
    match spec {
        "l12" => return Ok(from_ortho("l12".into(), firefly_l12())),
        "o6" => return Ok(from_ortho("o6".into(), o6())),
        "n5" => {
            return Ok(Source {
                name: "n5".into(),
                poset: n5().poset().clone(),
                ortho_pairs: None,
            })
        }
        _ => {}
    }
    let text = read(spec)?;
    let doc = parse_lattice(&text).map_err(|e| Failure::parse(format!("{spec}: {e}")))?;
    from_document(&doc, spec)
}

fn from_document(doc: &LatticeDocument, spec: &str) -> Result<Source, Failure> {
    let poset = doc.to_poset().map_err(|e| Failure::parse(format!("{spec}: {e}")))?;
    Ok(Source {
        name: doc.name.clone(),
        poset,
        ortho_pairs: (!doc.ortho.is_empty()).then(|| doc.ortho_pairs()),
    })
}

pub fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

impl Source {
    /// The ortholattice, or exit 2 when the source is not one.
    pub fn ortho(&self) -> Result<OrthoLattice, Failure> {
        let pairs = self
            .ortho_pairs
            .as_ref()
            .ok_or_else(|| Failure::parse(format!("`{}` has no orthocomplement", self.name)))?;
        let lattice = qlogic::lattice::lattice_check(&self.poset).map_err(|e| Failure::parse(e.to_string()))?;
        qlogic::lattice::attach_ortho(lattice, pairs).map_err(|e| Failure::parse(e.to_string()))
    }
}
