use num_complex::Complex64;
use serde_json::Value;

use super::IoError;
use crate::hilbert::{subspace_from_vectors, CMatrix, CVector, Subspace};

fn json_err(message: impl Into<String>) -> IoError {
    IoError::Json(message.into())
}

fn entry(v: &Value) -> Result<Complex64, IoError> {
    match v {
        Value::Array(pair) if pair.len() == 2 => {
            let re = pair[0].as_f64().ok_or_else(|| json_err("real part is not a number"))?;
            let im = pair[1].as_f64().ok_or_else(|| json_err("imaginary part is not a number"))?;
            Ok(Complex64::new(re, im))
        }
        _ => Err(json_err("vector entries must be [re, im] pairs")),
    }
}

fn vector(v: &Value) -> Result<CVector, IoError> {
    let items = v.as_array().ok_or_else(|| json_err("a vector must be an array"))?;
    let entries = items.iter().map(entry).collect::<Result<Vec<_>, _>>()?;
    Ok(CVector::from_vec(entries))
}

fn is_vector(v: &Value) -> bool {
    v.as_array()
        .and_then(|a| a.first())
        .and_then(Value::as_array)
        .and_then(|pair| pair.first())
        .is_some_and(Value::is_number)
}

/// Seed subspaces from JSON: an array whose items are either one complex
/// vector (`[[re, im], ...]`, spanning a line) or an array of such vectors.
pub fn parse_seeds(text: &str) -> Result<Vec<Subspace>, IoError> {
    let root: Value = serde_json::from_str(text).map_err(|e| json_err(e.to_string()))?;
    let seeds = root.as_array().ok_or_else(|| json_err("expected an array of seeds"))?;
    if seeds.is_empty() {
        return Err(json_err("no seeds"));
    }
    let mut out = Vec::with_capacity(seeds.len());
    for seed in seeds {
        let vectors = if is_vector(seed) {
            vec![vector(seed)?]
        } else {
            let list = seed.as_array().ok_or_else(|| json_err("a seed must be an array"))?;
            list.iter().map(vector).collect::<Result<Vec<_>, _>>()?
        };
        let d = match out.first() {
            Some(first) => Subspace::ambient(first),
            None => vectors.first().map(|v| v.len()).ok_or_else(|| json_err("empty seed"))?,
        };
        out.push(subspace_from_vectors(d, &vectors)?);
    }
    Ok(out)
}

/// A complex matrix from JSON rows of `[re, im]` pairs.
pub fn parse_matrix(text: &str) -> Result<CMatrix, IoError> {
    let root: Value = serde_json::from_str(text).map_err(|e| json_err(e.to_string()))?;
    let rows = root.as_array().ok_or_else(|| json_err("expected an array of rows"))?;
    let rows = rows.iter().map(vector).collect::<Result<Vec<_>, _>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(json_err("rows must be non-empty and of equal length"));
    }
    Ok(CMatrix::from_fn(n, rows[0].len(), |i, j| rows[i][j]))
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().ok().filter(|x| x.is_finite()).map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .unwrap_or(0);
    let (re, im) = body.split_at(split);
    let re = if re.is_empty() { 0.0 } else { re.parse::<f64>().ok()? };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().ok()?,
    };
    (re.is_finite() && im.is_finite()).then(|| Complex64::new(re, im))
}

/// Parses `(c1, c2, ...)` with complex entries.
pub fn parse_vector(text: &str) -> Option<CVector> {
    let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
    let entries = inner.split(',').map(parse_complex).collect::<Option<Vec<_>>>()?;
    (!entries.is_empty()).then(|| CVector::from_vec(entries))
}
