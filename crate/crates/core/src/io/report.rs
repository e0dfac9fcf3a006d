//! JSON reports and Graphviz output. Every report object carries
//! `"schema": 1` and a `"kind"`; keys are emitted in sorted order.

use serde_json::{json, Map, Value};

use crate::classify::{ClassificationReport, DistributiveLaw, SigmaOmpWitness};
use crate::cox::{AssociativityReport, InvolutionReport, Regraduation, RescaleReport};
use crate::hilbert::GeneratedLattice;
use crate::lattice::{BoundKind, ElementId, OrthoViolation, Poset};
use crate::number::{format_rational, round_sig, Number};
use crate::state::{
    AffineRelation, BoundSide, CertificateTerm, Constraint, DecompositionWitness,
    InclusionExclusionViolation, StateCheckReport, SubadditivityViolation, Valuation,
};

pub const SCHEMA: u64 = 1;

/// Anything that can name elements.
pub trait Names {
    fn element_name(&self, e: ElementId) -> &str;
}

impl Names for Poset {
    fn element_name(&self, e: ElementId) -> &str {
        self.name(e)
    }
}

impl Names for crate::lattice::OrthoLattice {
    fn element_name(&self, e: ElementId) -> &str {
        self.name(e)
    }
}

/// A report object with the schema and kind fields filled in.
pub fn envelope(kind: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!(kind));
    m
}

/// Pretty JSON text with a trailing newline.
pub fn render(report: &Map<String, Value>) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("maps of plain values serialize");
    text.push('\n');
    text
}

/// Exact values as `"p/q"` strings, floats rounded to 12 significant digits.
pub fn number(n: &Number) -> Value {
    match n {
        Number::Exact(r) => json!(format_rational(r)),
        Number::Float(x) => float(*x),
    }
}

pub fn float(x: f64) -> Value {
    json!(round_sig(x))
}

fn name(names: &impl Names, e: ElementId) -> Value {
    json!(names.element_name(e))
}

fn name_list(names: &impl Names, list: &[ElementId]) -> Value {
    Value::Array(list.iter().map(|&e| name(names, e)).collect())
}

pub fn classification(lattice_name: &str, poset: &Poset, r: &ClassificationReport) -> Map<String, Value> {
    let mut m = envelope("classification");
    m.insert("name".into(), json!(lattice_name));
    m.insert("elements".into(), json!(poset.len()));
    for (key, flag) in [
        ("lattice", r.is_lattice),
        ("ortholattice", r.is_ortholattice),
        ("distributive", r.is_distributive),
        ("modular", r.is_modular),
        ("orthomodular", r.is_orthomodular),
        ("boolean", r.is_boolean),
        ("atomic", r.is_atomic),
        ("atomistic", r.is_atomistic),
    ] {
        m.insert(key.into(), json!(flag));
    }
    m.insert("atoms".into(), name_list(poset, &r.atoms));
    m.insert(
        "blocks".into(),
        Value::Array(r.blocks.iter().map(|b| name_list(poset, b)).collect()),
    );
    let w = &r.witnesses;
    let mut witnesses = Map::new();
    if let Some(f) = &w.lattice {
        let kind = match f.kind {
            BoundKind::Meet => "meet",
            BoundKind::Join => "join",
        };
        witnesses.insert(
            "lattice".into(),
            json!({
                "missing": kind,
                "pair": name_list(poset, &[f.pair.0, f.pair.1]),
                "bounds": name_list(poset, &f.witnesses),
            }),
        );
    }
    if let Some(v) = &w.ortholattice {
        witnesses.insert(
            "ortholattice".into(),
            Value::Array(v.iter().map(|x| ortho_violation(poset, x)).collect()),
        );
    }
    if let Some(d) = &w.distributive {
        let law = match d.law {
            DistributiveLaw::D1 => "x^(yvz)=(x^y)v(x^z)",
            DistributiveLaw::D2 => "xv(y^z)=(xvy)^(xvz)",
        };
        witnesses.insert(
            "distributive".into(),
            json!({"law": law, "xyz": name_list(poset, &[d.x, d.y, d.z])}),
        );
    }
    if let Some(mw) = &w.modular {
        witnesses.insert("modular".into(), json!({"xab": name_list(poset, &[mw.x, mw.a, mw.b])}));
    }
    if let Some(o) = &w.orthomodular {
        witnesses.insert("orthomodular".into(), json!({"xb": name_list(poset, &[o.x, o.b])}));
    }
    m.insert("witnesses".into(), Value::Object(witnesses));
    m
}

fn ortho_violation(names: &impl Names, v: &OrthoViolation) -> Value {
    match v {
        OrthoViolation::Unpaired { element } => json!({"axiom": "unpaired", "elements": name_list(names, &[*element])}),
        OrthoViolation::NotInvolutive { element } => {
            json!({"axiom": "involution", "elements": name_list(names, &[*element])})
        }
        OrthoViolation::NotOrderReversing { lower, upper } => {
            json!({"axiom": "order_reversing", "elements": name_list(names, &[*lower, *upper])})
        }
        OrthoViolation::ComplementLawFails { element } => {
            json!({"axiom": "complement", "elements": name_list(names, &[*element])})
        }
    }
}

pub fn sigma_omp(names: &impl Names, w: Option<&SigmaOmpWitness>) -> Value {
    match w {
        None => json!({"pass": true}),
        Some(SigmaOmpWitness::MissingJoin(family)) => {
            json!({"pass": false, "missing_join": name_list(names, family)})
        }
        Some(SigmaOmpWitness::OrthomodularFails { x, b }) => {
            json!({"pass": false, "orthomodular_xb": name_list(names, &[*x, *b])})
        }
    }
}

fn constraint(names: &impl Names, c: &Constraint) -> Value {
    match c {
        Constraint::Bottom => json!({"type": "bottom", "elements": []}),
        Constraint::Top => json!({"type": "top", "elements": []}),
        Constraint::Additivity { a, b, join } => {
            json!({"type": "additivity", "elements": name_list(names, &[*a, *b, *join])})
        }
        Constraint::NonNegative(e) => json!({"type": "nonnegative", "elements": name_list(names, &[*e])}),
        Constraint::AtMostOne(e) => json!({"type": "at_most_one", "elements": name_list(names, &[*e])}),
    }
}

pub fn state_check(names: &impl Names, r: &StateCheckReport) -> Map<String, Value> {
    let mut m = envelope("state-check");
    m.insert("pass".into(), json!(r.pass));
    m.insert("exact".into(), json!(r.exact));
    m.insert("tolerance".into(), float(if r.exact { 0.0 } else { r.tolerance }));
    m.insert("bottom_zero".into(), json!(r.bottom_zero));
    m.insert("complement_failures".into(), name_list(names, &r.complement_failures));
    m.insert(
        "violations".into(),
        Value::Array(
            r.violations
                .iter()
                .map(|v| {
                    let mut c = constraint(names, &v.constraint);
                    c["residual"] = number(&v.residual);
                    c
                })
                .collect(),
        ),
    );
    m
}

/// `{element name: value}`
pub fn valuation(names: &impl Names, v: &Valuation) -> Value {
    let mut m = Map::new();
    for (i, x) in v.values().iter().enumerate() {
        m.insert(names.element_name(ElementId::new(i)).to_string(), number(x));
    }
    Value::Object(m)
}

pub fn state(names: &impl Names, v: &Valuation) -> Map<String, Value> {
    let mut m = envelope("state");
    m.insert("exact".into(), json!(v.is_exact()));
    m.insert("state".into(), valuation(names, v));
    m
}

pub fn extreme_states(names: &impl Names, vertices: &[Valuation], complete: bool) -> Map<String, Value> {
    let mut m = envelope("extreme-states");
    m.insert("complete".into(), json!(complete));
    m.insert("count".into(), json!(vertices.len()));
    m.insert(
        "states".into(),
        Value::Array(vertices.iter().map(|v| valuation(names, v)).collect()),
    );
    m
}

pub fn relations(ortho: &crate::lattice::OrthoLattice, rels: &[AffineRelation]) -> Map<String, Value> {
    let mut m = envelope("relations");
    m.insert(
        "relations".into(),
        Value::Array(
            rels.iter()
                .map(|r| {
                    let terms: Map<String, Value> = r
                        .terms
                        .iter()
                        .map(|(e, c)| (ortho.name(*e).to_string(), json!(c.to_string())))
                        .collect();
                    json!({"text": r.render(ortho), "terms": terms, "rhs": r.rhs.to_string()})
                })
                .collect(),
        ),
    );
    m
}

pub fn infeasible(names: &impl Names, certificate: &[CertificateTerm]) -> Map<String, Value> {
    let mut m = envelope("infeasible");
    m.insert(
        "certificate".into(),
        Value::Array(
            certificate
                .iter()
                .map(|t| {
                    let bound = match t.side {
                        BoundSide::Lower => "lower",
                        BoundSide::Upper => "upper",
                    };
                    json!({"element": name(names, t.element), "bound": bound, "multiplier": number(&t.multiplier)})
                })
                .collect(),
        ),
    );
    m
}

pub fn inclusion_exclusion(names: &impl Names, v: &[InclusionExclusionViolation]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| {
                json!({
                    "pair": name_list(names, &[x.a, x.b]),
                    "defect": number(&x.defect),
                    "strict_decomposition": x.strict_decomposition,
                })
            })
            .collect(),
    )
}

pub fn subadditivity(names: &impl Names, v: &[SubadditivityViolation]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| {
                json!({
                    "pair": name_list(names, &[x.a, x.b]),
                    "join": name(names, x.join),
                    "defect": number(&x.defect),
                })
            })
            .collect(),
    )
}

pub fn decomposition(names: &impl Names, v: &[DecompositionWitness]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| json!({"pair": name_list(names, &[x.a, x.b]), "gap": number(&x.gap)}))
            .collect(),
    )
}

/// The generated lattice as a `.lat` document plus the projector of each
/// element.
pub fn generated_lattice(g: &GeneratedLattice, lat_text: &str) -> Map<String, Value> {
    let mut m = envelope("hilbert");
    m.insert("lat".into(), json!(lat_text));
    m.insert("elements".into(), json!(g.lattice.len()));
    let embedding: Vec<Value> = g
        .lattice
        .elements()
        .map(|e| {
            let s = g.subspace(e);
            let p = s.projector();
            let rows: Vec<Value> = (0..p.nrows())
                .map(|i| {
                    Value::Array(
                        (0..p.ncols())
                            .map(|j| json!([round_sig(p[(i, j)].re), round_sig(p[(i, j)].im)]))
                            .collect(),
                    )
                })
                .collect();
            json!({"element": g.lattice.name(e), "dim": s.dim(), "projector": rows})
        })
        .collect();
    m.insert("embedding".into(), Value::Array(embedding));
    m
}

pub fn involution(function: &str, r: &InvolutionReport) -> Map<String, Value> {
    let mut m = envelope("cox-involution");
    m.insert("function".into(), json!(function));
    m.insert("pass".into(), json!(r.pass));
    m.insert("tolerance".into(), float(r.tolerance));
    m.insert("max_residual".into(), float(r.max_residual));
    m.insert("worst_x".into(), float(r.worst_x));
    m.insert("identity".into(), json!(r.identity));
    m
}

pub fn associativity(function: &str, r: &AssociativityReport) -> Map<String, Value> {
    let mut m = envelope("cox-associativity");
    m.insert("function".into(), json!(function));
    m.insert("pass".into(), json!(r.pass));
    m.insert("tolerance".into(), float(r.tolerance));
    m.insert("max_residual".into(), float(r.max_residual));
    m.insert(
        "worst".into(),
        r.worst.map_or(Value::Null, |(x, y, z)| json!([round_sig(x), round_sig(y), round_sig(z)])),
    );
    m.insert("checked".into(), json!(r.checked));
    m.insert("skipped".into(), json!(r.skipped));
    m
}

pub fn regraduation(function: &str, r: &Regraduation, rescale: &RescaleReport) -> Map<String, Value> {
    let mut m = envelope("cox-regraduation");
    m.insert("function".into(), json!(function));
    m.insert("pass".into(), json!(rescale.pass));
    m.insert("max_residual".into(), float(r.max_residual));
    m.insert(
        "w".into(),
        Value::Array(
            r.nodes
                .iter()
                .zip(&r.values)
                .map(|(x, w)| json!([round_sig(*x), round_sig(*w)]))
                .collect(),
        ),
    );
    m.insert(
        "rescale".into(),
        Value::Array(
            rescale
                .residuals
                .iter()
                .map(|(l, res)| json!({"factor": round_sig(*l), "max_residual": round_sig(*res)}))
                .collect(),
        ),
    );
    m
}

/// An error report: `{"kind": "error", "error": <category>, "message": ...}`.
pub fn error(category: &str, message: &str) -> Map<String, Value> {
    let mut m = envelope("error");
    m.insert("error".into(), json!(category));
    m.insert("message".into(), json!(message));
    m
}

/// The Hasse diagram in Graphviz `dot` syntax, bottom to top.
pub fn dot(graph_name: &str, poset: &Poset) -> String {
    let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n", quote(graph_name));
    for e in poset.elements() {
        out.push_str(&format!("  {};\n", quote(poset.name(e))));
    }
    for (a, b) in poset.covers() {
        out.push_str(&format!("  {} -> {};\n", quote(poset.name(a)), quote(poset.name(b))));
    }
    out.push_str("}\n");
    out
}
