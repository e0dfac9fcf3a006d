use std::fmt::Write;

use super::{content_lines, syntax, IoError};
use crate::lattice::OrthoLattice;
use crate::number::Number;
use crate::state::Valuation;

/// A parsed `.val` file: entries in file order.
#[derive(Clone, Debug, PartialEq)]
pub struct ValuationDocument {
    pub lattice: String,
    pub entries: Vec<(String, Number)>,
}

/// Parses `valuation for <lattice>` followed by `<element> = <number>` lines.
/// Numbers are exact for `p/q` and integers, floating point otherwise, and
/// must lie in `[0, 1]`.
pub fn parse_valuation(text: &str) -> Result<ValuationDocument, IoError> {
    let mut lattice: Option<String> = None;
    let mut entries: Vec<(String, Number)> = Vec::new();
    for (line, content) in content_lines(text) {
        if lattice.is_none() {
            let words: Vec<&str> = content.split_whitespace().collect();
            match words.as_slice() {
                ["valuation", "for", name] => {
                    lattice = Some(name.to_string());
                    continue;
                }
                _ => return Err(syntax(line, "missing `valuation for <lattice>` header")),
            }
        }
        let Some((element, value)) = content.split_once('=') else {
            return Err(syntax(line, "expected `<element> = <number>`"));
        };
        let element = element.trim();
        if element.is_empty() || element.contains(char::is_whitespace) {
            return Err(syntax(line, "expected a single element name"));
        }
        let number = Number::parse(value).ok_or_else(|| syntax(line, format!("`{}` is not a number", value.trim())))?;
        if number.lt_f64(0.0) || number.gt_f64(1.0) {
            return Err(IoError::ValueOutOfRange {
                element: element.to_string(),
                value: value.trim().to_string(),
            });
        }
        if entries.iter().any(|(e, _)| e == element) {
            return Err(IoError::DuplicateDeclaration {
                line,
                what: format!("value for `{element}`"),
            });
        }
        entries.push((element.to_string(), number));
    }
    let Some(lattice) = lattice else {
        return Err(syntax(1, "missing `valuation for <lattice>` header"));
    };
    Ok(ValuationDocument { lattice, entries })
}

impl ValuationDocument {
    pub fn from_valuation(lattice: &str, ortho: &OrthoLattice, v: &Valuation) -> Self {
        ValuationDocument {
            lattice: lattice.to_string(),
            entries: ortho
                .elements()
                .map(|e| (ortho.name(e).to_string(), v.get(e).clone()))
                .collect(),
        }
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("valuation for {}\n", self.lattice);
        for (e, v) in &self.entries {
            writeln!(out, "{e} = {v}").unwrap();
        }
        out
    }

    /// Resolves the entries against `ortho`, which must be the lattice named
    /// in the header and receive a value for every element.
    pub fn resolve(&self, name: &str, ortho: &OrthoLattice) -> Result<Valuation, IoError> {
        if self.lattice != name {
            return Err(IoError::LatticeMismatch {
                expected: name.to_string(),
                found: self.lattice.clone(),
            });
        }
        let mut values: Vec<Option<Number>> = vec![None; ortho.len()];
        for (element, v) in &self.entries {
            let e = ortho.find(element).ok_or_else(|| IoError::UnknownElement {
                line: 0,
                name: element.clone(),
            })?;
            values[e.index()] = Some(v.clone());
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| IoError::MissingValue(ortho.poset().names()[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Valuation::new(values))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::powerset;

    #[test]
    fn parses_numbers() {
        let doc = parse_valuation("valuation for l12\nl = 1/4\nn = 0.5 # half\n").unwrap();
        assert_eq!(doc.lattice, "l12");
        assert_eq!(doc.entries[0], ("l".to_string(), Number::ratio(1, 4)));
        assert_eq!(doc.entries[1], ("n".to_string(), Number::Float(0.5)));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            parse_valuation("valuation for x\nl = 1.5\n").unwrap_err(),
            IoError::ValueOutOfRange {
                element: "l".into(),
                value: "1.5".into()
            }
        );
        assert!(matches!(parse_valuation("l = 1\n"), Err(IoError::Syntax { line: 1, .. })));
        assert!(matches!(parse_valuation("valuation for x\nl 1\n"), Err(IoError::Syntax { line: 2, .. })));
        assert!(matches!(parse_valuation("valuation for x\nl = x\n"), Err(IoError::Syntax { line: 2, .. })));
        assert!(matches!(parse_valuation("valuation for x\nl = -1/2\n"), Err(IoError::ValueOutOfRange { .. })));
    }

    #[test]
    fn resolves_against_lattice() {
        let p = powerset(1).unwrap();
        let doc = parse_valuation("valuation for p1\n{} = 0\n{1} = 1\n").unwrap();
        let v = doc.resolve("p1", &p).unwrap();
        assert_eq!(v.values(), &[Number::zero(), Number::one()]);
        assert!(matches!(doc.resolve("other", &p), Err(IoError::LatticeMismatch { .. })));
        let partial = parse_valuation("valuation for p1\n{} = 0\n").unwrap();
        assert_eq!(partial.resolve("p1", &p).unwrap_err(), IoError::MissingValue("{1}".into()));
        let text = ValuationDocument::from_valuation("p1", &p, &v).serialize();
        assert_eq!(parse_valuation(&text).unwrap(), doc);
    }
}
