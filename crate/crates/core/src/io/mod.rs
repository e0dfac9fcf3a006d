//! Text formats and reports: the `.lat` lattice DSL, `.val` valuation files,
//! seed-subspace JSON, and the JSON/DOT output of the command-line tool.

mod lat;
pub mod report;
mod seeds;
mod val;

pub use lat::{parse_lattice, LatticeDocument};
pub use seeds::{parse_complex, parse_matrix, parse_seeds, parse_vector};
pub use val::{parse_valuation, ValuationDocument};

use thiserror::Error;

use crate::hilbert::HilbertError;
use crate::lattice::LatticeError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown element `{name}`")]
    UnknownElement { line: usize, name: String },
    #[error("line {line}: duplicate {what}")]
    DuplicateDeclaration { line: usize, what: String },
    #[error("value {value} for `{element}` is outside [0, 1]")]
    ValueOutOfRange { element: String, value: String },
    #[error("valuation is for lattice `{found}`, not `{expected}`")]
    LatticeMismatch { expected: String, found: String },
    #[error("valuation has no value for `{0}`")]
    MissingValue(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

pub(crate) fn syntax(line: usize, message: impl Into<String>) -> IoError {
    IoError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based numbers and `#` comments
/// stripped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}
