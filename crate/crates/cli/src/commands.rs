use std::path::Path;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use qlogic::classify::{check_sigma_omp, classify_poset};
use qlogic::cox::{
    builtin, check_associativity, check_involution, regraduate, verify_rescale_freedom, CoxError, CoxFunction,
};
use qlogic::hilbert::{born_valuation, generate_sublattice, DensityMatrix, HilbertError, DEFAULT_CAP};
use qlogic::io::{parse_matrix, parse_seeds, parse_valuation, parse_vector, report, LatticeDocument};
use qlogic::state::{
    decomposition_scan, extreme_states_with, find_state_with, implied_affine_relations, inclusion_exclusion_scan,
    is_state, sample_states, subadditivity_scan, Arithmetic, StateError, Valuation,
};
use qlogic::{OrthoLattice, OrthoPoset};

use crate::source::{self, Source};
use crate::{Command, Common, CoxCheck, Failure, Scan, StatesMode};

/// Vertex cap for `states extremes` without `--cap`.
const DEFAULT_VERTEX_CAP: usize = 10_000;

type Outcome = Result<Map<String, Value>, Failure>;

pub fn run(common: &Common, command: Command) -> Outcome {
    match command {
        Command::Classify { source } => classify(common, &source),
        Command::States {
            source,
            mode,
            count,
            scan,
        } => states(common, &source, mode, count, scan),
        Command::Check { source, valuation } => check(common, &source, &valuation),
        Command::Hilbert { seeds, rho, scan } => hilbert(common, &seeds, rho.as_deref(), scan),
        Command::Cox {
            function,
            check,
            grid,
            factors,
        } => cox(common, &function, check, grid, &factors),
    }
}

fn with_dot(common: &Common, src: &Source, mut m: Map<String, Value>) -> Map<String, Value> {
    if common.dot {
        m.insert("dot".into(), json!(report::dot(&src.name, &src.poset)));
    }
    m
}

fn classify(common: &Common, spec: &str) -> Outcome {
    let src = source::load(spec)?;
    let r = classify_poset(&src.poset, src.ortho_pairs.as_deref());
    let mut m = report::classification(&src.name, &src.poset, &r);
    if let Some(pairs) = &src.ortho_pairs {
        if let Ok(op) = OrthoPoset::from_pairs(src.poset.clone(), pairs) {
            m.insert("sigma_omp".into(), report::sigma_omp(&src.poset, check_sigma_omp(&op).as_ref()));
        }
    }
    Ok(with_dot(common, &src, m))
}

fn arithmetic(common: &Common) -> Arithmetic {
    match (common.exact, common.float) {
        (true, _) => Arithmetic::Exact,
        (_, true) => Arithmetic::Float,
        _ => Arithmetic::Auto,
    }
}

fn state_failure(ortho: &OrthoLattice, err: StateError) -> Failure {
    match err {
        StateError::Infeasible { certificate } => Failure::violation(report::infeasible(ortho, &certificate)),
        StateError::CapExceeded { partial, .. } => {
            Failure::violation(report::extreme_states(ortho, &partial, false))
        }
        StateError::NotOrthomodular(w) => {
            let mut m = report::error("not-orthomodular", &StateError::NotOrthomodular(w).to_string());
            m.insert("witness".into(), json!([ortho.name(w.x), ortho.name(w.b)]));
            Failure {
                code: crate::USAGE,
                report: m,
            }
        }
        other => Failure::usage(other.to_string()),
    }
}

fn scan_report(ortho: &OrthoLattice, v: &Valuation, scan: Scan, tolerance: f64) -> Result<Value, StateError> {
    let (name, results) = match scan {
        Scan::InclusionExclusion => (
            "inclusion-exclusion",
            report::inclusion_exclusion(ortho, &inclusion_exclusion_scan(ortho, v, tolerance)?),
        ),
        Scan::Subadd => ("subadditivity", report::subadditivity(ortho, &subadditivity_scan(ortho, v, tolerance)?)),
        Scan::Decomposition => ("decomposition", report::decomposition(ortho, &decomposition_scan(ortho, v, tolerance)?)),
    };
    Ok(json!({"type": name, "results": results}))
}

fn states(common: &Common, spec: &str, mode: StatesMode, count: usize, scan: Option<Scan>) -> Outcome {
    let src = source::load(spec)?;
    let ortho = src.ortho()?;
    let fail = |e| state_failure(&ortho, e);
    let m = match mode {
        StatesMode::Find => report::state(&ortho, &find_state_with(&ortho, arithmetic(common)).map_err(fail)?),
        StatesMode::Extremes => {
            let cap = common.cap.unwrap_or(DEFAULT_VERTEX_CAP);
            let vertices = extreme_states_with(&ortho, cap, arithmetic(common)).map_err(fail)?;
            report::extreme_states(&ortho, &vertices, true)
        }
        StatesMode::Relations => report::relations(&ortho, &implied_affine_relations(&ortho).map_err(fail)?),
        StatesMode::Sample => {
            let samples = sample_states(&ortho, count, common.seed).map_err(fail)?;
            let mut m = report::envelope("samples");
            m.insert("seed".into(), json!(common.seed));
            m.insert(
                "states".into(),
                Value::Array(samples.iter().map(|v| report::valuation(&ortho, v)).collect()),
            );
            if let Some(scan) = scan {
                let scans = samples
                    .iter()
                    .map(|v| scan_report(&ortho, v, scan, common.tolerance))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(fail)?;
                m.insert("scans".into(), Value::Array(scans));
            }
            m
        }
    };
    Ok(with_dot(common, &src, m))
}

fn check(common: &Common, spec: &str, val_path: &str) -> Outcome {
    let src = source::load(spec)?;
    let ortho = src.ortho()?;
    let doc = parse_valuation(&source::read(val_path)?).map_err(|e| Failure::parse(format!("{val_path}: {e}")))?;
    let v = doc
        .resolve(&src.name, &ortho)
        .map_err(|e| Failure::parse(format!("{val_path}: {e}")))?;
    let r = is_state(&ortho, &v, common.tolerance).map_err(|e| Failure::usage(e.to_string()))?;
    let m = with_dot(common, &src, report::state_check(&ortho, &r));
    if r.pass {
        Ok(m)
    } else {
        Err(Failure::violation(m))
    }
}

fn hilbert_failure(err: HilbertError) -> Failure {
    match err {
        HilbertError::CapExceeded { .. } => Failure::violation(report::error("cap-exceeded", &err.to_string())),
        other => Failure::parse(other.to_string()),
    }
}

fn density(spec: &str, d: usize, seed: u64) -> Result<DensityMatrix, Failure> {
    let rho = match spec {
        "maxmixed" => DensityMatrix::maximally_mixed(d),
        "random" => DensityMatrix::random(d, &mut ChaCha8Rng::seed_from_u64(seed)),
        _ => match spec.strip_prefix("pure:") {
            Some(v) => {
                let v = parse_vector(v).ok_or_else(|| Failure::usage(format!("cannot parse vector `{v}`")))?;
                DensityMatrix::pure(&v)
            }
            None => {
                let m = parse_matrix(&source::read(spec)?).map_err(|e| Failure::parse(format!("{spec}: {e}")))?;
                DensityMatrix::new(m)
            }
        },
    }
    .map_err(hilbert_failure)?;
    if rho.dim() != d {
        return Err(hilbert_failure(HilbertError::DimensionMismatch {
            expected: d,
            got: rho.dim(),
        }));
    }
    Ok(rho)
}

fn hilbert(common: &Common, seeds_path: &str, rho: Option<&str>, scan: Option<Scan>) -> Outcome {
    let seeds = parse_seeds(&source::read(seeds_path)?).map_err(|e| Failure::parse(format!("{seeds_path}: {e}")))?;
    let g = generate_sublattice(&seeds, common.cap.unwrap_or(DEFAULT_CAP)).map_err(hilbert_failure)?;
    let doc = LatticeDocument::from_ortho("generated", &g.lattice);
    let mut m = report::generated_lattice(&g, &doc.serialize());
    m.insert("dimension".into(), json!(seeds[0].ambient()));
    let src = Source {
        name: doc.name.clone(),
        poset: g.lattice.poset().clone(),
        ortho_pairs: None,
    };
    let Some(spec) = rho else {
        return Ok(with_dot(common, &src, m));
    };
    let rho = density(spec, seeds[0].ambient(), common.seed)?;
    let v = born_valuation(&rho, &g).map_err(hilbert_failure)?;
    m.insert("born".into(), report::valuation(&g.lattice, &v));
    let check = is_state(&g.lattice, &v, common.tolerance).map_err(|e| Failure::usage(e.to_string()))?;
    let pass = check.pass;
    m.insert("state_check".into(), Value::Object(report::state_check(&g.lattice, &check)));
    if pass {
        if let Some(scan) = scan {
            let s = scan_report(&g.lattice, &v, scan, common.tolerance).map_err(|e| Failure::usage(e.to_string()))?;
            m.insert("scan".into(), s);
        }
    }
    let m = with_dot(common, &src, m);
    if pass {
        Ok(m)
    } else {
        Err(Failure::violation(m))
    }
}

fn load_function(spec: &str) -> Result<CoxFunction, Failure> {
    if let Some(f) = builtin(spec) {
        return Ok(f);
    }
    if !Path::new(spec).exists() {
        return Err(Failure::usage(format!(
            "`{spec}` is neither a built-in ({}) nor a file",
            qlogic::cox::BUILTINS.join(", ")
        )));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(spec)
        .map_err(|e| Failure::usage(format!("{spec}: {e}")))?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Failure::parse(format!("{spec}: {e}")))?;
        let parsed: Option<Vec<f64>> = record.iter().map(|f| f.parse::<f64>().ok()).collect();
        match parsed {
            Some(v) if v.len() == 3 => rows.push((v[0], v[1], v[2])),
            // a header line
            None if i == 0 => {}
            _ => return Err(Failure::parse(format!("{spec}: row {} is not `x, y, f`", i + 1))),
        }
    }
    let name = Path::new(spec).file_stem().and_then(|s| s.to_str()).unwrap_or(spec);
    CoxFunction::from_samples(name, &rows).map_err(|e| Failure::parse(format!("{spec}: {e}")))
}

fn cox_failure(function: &str, err: CoxError) -> Failure {
    match err {
        CoxError::DomainEscape { .. } | CoxError::TooManySkips { .. } | CoxError::NotRegraduable(_) => {
            let mut m = report::error("cox", &err.to_string());
            m.insert("function".into(), json!(function));
            Failure::violation(m)
        }
        other => Failure::usage(other.to_string()),
    }
}

fn cox(common: &Common, spec: &str, check: CoxCheck, grid: usize, factors: &[f64]) -> Outcome {
    let f = load_function(spec)?;
    let name = f.name().to_string();
    let fail = |e| cox_failure(&name, e);
    let (pass, m) = match check {
        CoxCheck::Involution => {
            let r = check_involution(&f, grid, common.tolerance).map_err(fail)?;
            (r.pass, report::involution(&name, &r))
        }
        CoxCheck::Assoc => {
            let r = check_associativity(&f, grid, common.tolerance).map_err(fail)?;
            (r.pass, report::associativity(&name, &r))
        }
        CoxCheck::Regraduate => {
            let reg = regraduate(&f, grid).map_err(fail)?;
            let rescale = verify_rescale_freedom(&reg, &f, factors, common.tolerance).map_err(fail)?;
            (rescale.pass, report::regraduation(&name, &reg, &rescale))
        }
    };
    if pass {
        Ok(m)
    } else {
        Err(Failure::violation(m))
    }
}
