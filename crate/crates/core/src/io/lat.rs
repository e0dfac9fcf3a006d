use std::collections::{HashMap, HashSet};
use std::fmt::Write;

use super::{content_lines, syntax, IoError};
use crate::lattice::{attach_ortho, build_poset, lattice_check, ElementId, OrthoLattice, Poset};

/// A parsed `.lat` file. Element indices follow declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDocument {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<(usize, usize)>,
    pub ortho: Vec<(usize, usize)>,
    pub bottom: Option<usize>,
    pub top: Option<usize>,
}

/// Parses the line-oriented lattice format:
///
/// ```text
/// lattice <name>
/// element <name>
/// cover <lower> <upper>
/// ortho <a> <b>
/// bottom <name>
/// top <name>
/// ```
///
/// `#` starts a comment. Elements must be declared before use.
pub fn parse_lattice(text: &str) -> Result<LatticeDocument, IoError> {
    let mut name: Option<String> = None;
    let mut elements: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut covers = Vec::new();
    let mut ortho = Vec::new();
    let mut seen_pairs: HashSet<(&str, usize, usize)> = HashSet::new();
    let (mut bottom, mut top) = (None, None);

    for (line, content) in content_lines(text) {
        let words: Vec<&str> = content.split_whitespace().collect();
        let (keyword, args) = (words[0], &words[1..]);
        if name.is_none() {
            match (keyword, args) {
                ("lattice", [n]) => {
                    name = Some(n.to_string());
                    continue;
                }
                ("lattice", _) => return Err(syntax(line, "expected `lattice <name>`")),
                _ => return Err(syntax(line, "missing `lattice <name>` header")),
            }
        }
        let lookup = |n: &str| {
            index.get(n).copied().ok_or_else(|| IoError::UnknownElement {
                line,
                name: n.to_string(),
            })
        };
        match (keyword, args) {
            ("lattice", _) => {
                return Err(IoError::DuplicateDeclaration {
                    line,
                    what: "lattice header".into(),
                })
            }
            ("element", [n]) => {
                if index.insert(n.to_string(), elements.len()).is_some() {
                    return Err(IoError::DuplicateDeclaration {
                        line,
                        what: format!("element `{n}`"),
                    });
                }
                elements.push(n.to_string());
            }
            ("cover", [a, b]) => {
                let pair = (lookup(a)?, lookup(b)?);
                if !seen_pairs.insert(("cover", pair.0, pair.1)) {
                    return Err(IoError::DuplicateDeclaration {
                        line,
                        what: format!("cover {a} {b}"),
                    });
                }
                covers.push(pair);
            }
            ("ortho", [a, b]) => {
                let (x, y) = (lookup(a)?, lookup(b)?);
                let pair = (x.min(y), x.max(y));
                if !seen_pairs.insert(("ortho", pair.0, pair.1)) {
                    return Err(IoError::DuplicateDeclaration {
                        line,
                        what: format!("ortho {a} {b}"),
                    });
                }
                ortho.push(pair);
            }
            ("bottom" | "top", [n]) => {
                let slot = if keyword == "bottom" { &mut bottom } else { &mut top };
                if slot.is_some() {
                    return Err(IoError::DuplicateDeclaration {
                        line,
                        what: keyword.into(),
                    });
                }
                *slot = Some(lookup(n)?);
            }
            ("element" | "bottom" | "top", _) => {
                return Err(syntax(line, format!("expected `{keyword} <name>`")))
            }
            ("cover" | "ortho", _) => return Err(syntax(line, format!("expected `{keyword} <a> <b>`"))),
            _ => return Err(syntax(line, format!("unknown keyword `{keyword}`"))),
        }
    }
    let Some(name) = name else {
        return Err(syntax(1, "missing `lattice <name>` header"));
    };
    Ok(LatticeDocument {
        name,
        elements,
        covers,
        ortho,
        bottom,
        top,
    })
}

impl LatticeDocument {
    /// Describes an ortholattice by its Hasse covers and complement pairs.
    pub fn from_ortho(name: &str, ortho: &OrthoLattice) -> Self {
        LatticeDocument {
            name: name.to_string(),
            elements: ortho.poset().names().to_vec(),
            covers: ortho
                .poset()
                .covers()
                .into_iter()
                .map(|(a, b)| (a.index(), b.index()))
                .collect(),
            ortho: ortho
                .ortho_pairs()
                .into_iter()
                .map(|(a, b)| (a.index(), b.index()))
                .collect(),
            bottom: None,
            top: None,
        }
    }

    /// Canonical text: header, elements in index order, then sorted covers,
    /// sorted complement pairs and explicit bounds.
    pub fn serialize(&self) -> String {
        let mut covers = self.covers.clone();
        covers.sort_unstable();
        covers.dedup();
        let mut ortho: Vec<(usize, usize)> = self.ortho.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        ortho.sort_unstable();
        ortho.dedup();
        let e = |i: usize| self.elements[i].as_str();
        let mut out = format!("lattice {}\n", self.name);
        for n in &self.elements {
            writeln!(out, "element {n}").unwrap();
        }
        for (a, b) in covers {
            writeln!(out, "cover {} {}", e(a), e(b)).unwrap();
        }
        for (a, b) in ortho {
            writeln!(out, "ortho {} {}", e(a), e(b)).unwrap();
        }
        if let Some(b) = self.bottom {
            writeln!(out, "bottom {}", e(b)).unwrap();
        }
        if let Some(t) = self.top {
            writeln!(out, "top {}", e(t)).unwrap();
        }
        out
    }

    fn ids(pairs: &[(usize, usize)]) -> Vec<(ElementId, ElementId)> {
        pairs.iter().map(|&(a, b)| (ElementId::new(a), ElementId::new(b))).collect()
    }

    pub fn ortho_pairs(&self) -> Vec<(ElementId, ElementId)> {
        Self::ids(&self.ortho)
    }

    pub fn to_poset(&self) -> Result<Poset, IoError> {
        Ok(build_poset(
            self.elements.clone(),
            &Self::ids(&self.covers),
            self.bottom.map(ElementId::new),
            self.top.map(ElementId::new),
        )?)
    }

    /// Builds and verifies the ortholattice the document describes.
    pub fn to_ortho(&self) -> Result<OrthoLattice, IoError> {
        let lattice = lattice_check(&self.to_poset()?)?;
        Ok(attach_ortho(lattice, &self.ortho_pairs())?)
    }
}
