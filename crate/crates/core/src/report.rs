//! Machine-readable output.
//!
//! JSON documents are rendered with sorted keys and every float written
//! with 17 significant digits, so identical inputs give byte-identical
//! files. Complex numbers are `[re, im]` pairs and matrices are arrays of
//! rows.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::cmatrix::{CMatrix, C64};
use crate::equilibrium::{
    CommonEigenstate, EquilibriumReport, GesReport, ReportState, SpectrumReport,
};
use crate::game::{complex_to_json, matrix_to_json, vector_to_json, PayoffTensor, TheoremReport};
use crate::strategy::{StrategyVector, UnitaryParams};

pub const SCAN_CSV_HEADER: &str = "gamma1,gamma2,E1,E2,margin";

/// Formats a float with 17 significant digits.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        // Collapse -0.0 so signs of exact zeros do not leak into output.
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

/// Renders a JSON value deterministically with two-space indentation.
pub fn to_canonical_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, value: &Value, depth: usize) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else {
                out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            if items.iter().all(is_scalar) {
                out.push('[');
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    write_value(out, item, depth + 1);
                }
                out.push(']');
            } else {
                out.push_str("[\n");
                for (k, item) in items.iter().enumerate() {
                    indent(out, depth + 1);
                    write_value(out, item, depth + 1);
                    if k + 1 < items.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                indent(out, depth);
                out.push(']');
            }
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                indent(out, depth + 1);
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push_str(": ");
                write_value(out, &map[*key], depth + 1);
                if k + 1 < keys.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            indent(out, depth);
            out.push('}');
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.len() <= 2 && a.iter().all(|x| x.is_number()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

pub fn matrix_json(m: &CMatrix) -> Value {
    matrix_to_json(m)
}

pub fn complex_json(z: C64) -> Value {
    complex_to_json(z)
}

pub fn params_json(p: &UnitaryParams) -> Value {
    serde_json::to_value(p).expect("plain floats")
}

pub fn strategy_vector_json(v: &StrategyVector) -> Value {
    vector_to_json(&v.coeffs)
}

pub fn tensor_json(h: &PayoffTensor) -> Value {
    let mut map = Map::new();
    map.insert("player".into(), json!(h.player().index() + 1));
    map.insert("H".into(), matrix_to_json(h.matrix()));
    if h.local_dim() == 4 {
        map.insert("classical".into(), matrix_to_json(&h.classical_submatrix()));
    }
    Value::Object(map)
}

pub fn state_json(state: &ReportState) -> Value {
    match state {
        ReportState::Vector(v) => json!({ "vector": vector_to_json(v) }),
        ReportState::Density(m) => json!({ "density": matrix_to_json(m) }),
        ReportState::Profile([a, b]) => json!({ "profile": [params_json(a), params_json(b)] }),
        ReportState::ClassicalMixture { p_nc } => json!({ "classical_mixture": { "p_nc": p_nc } }),
    }
}

pub fn equilibrium_json(r: &EquilibriumReport) -> Value {
    json!({
        "kind": serde_json::to_value(r.kind).expect("enum"),
        "strategy_set": r.strategy_set.map(|s| serde_json::to_value(s).expect("enum")),
        "state": r.state.as_ref().map(state_json),
        "payoffs": r.payoffs,
        "unitary_flags": r.unitary_flags,
        "deviation_margin": r.deviation_margin,
        "player_margins": r.player_margins,
    })
}

pub fn common_eigenstate_json(c: &CommonEigenstate) -> Value {
    json!({
        "eigenvalues": c.eigenvalues,
        "dim": c.dim,
        "shared": c.shared,
        "state": vector_to_json(&c.state),
        "factors": c.factors.as_ref().map(|[a, b]| json!([
            strategy_vector_json(a),
            strategy_vector_json(b),
        ])),
        "factor_operators": c.factors.as_ref().map(|[a, b]| json!([
            matrix_to_json(a.reconstruct().matrix()),
            matrix_to_json(b.reconstruct().matrix()),
        ])),
        "unitary_flags": c.unitary_flags,
    })
}

pub fn ges_json(g: &GesReport) -> Value {
    json!({
        "report": equilibrium_json(&g.report),
        "common": g.common.iter().map(common_eigenstate_json).collect::<Vec<_>>(),
    })
}

pub fn spectrum_json(s: &SpectrumReport) -> Value {
    json!({
        "player": s.player.index() + 1,
        "eigenvalues": s.decomposition.eigenvalues,
        "clusters": s.clusters.iter().map(|c| json!({
            "eigenvalue": c.eigenvalue,
            "dim": c.dim(),
            "indices": c.indices,
        })).collect::<Vec<_>>(),
        "eigenvectors": s.decomposition.eigenvectors.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
    })
}

pub fn theorem_json(t: &TheoremReport, tol: f64) -> Value {
    json!({
        "samples": t.samples,
        "sampling": serde_json::to_value(t.sampling).expect("enum"),
        "seed": t.seed,
        "max_abs_discrepancy": t.max_abs_discrepancy,
        "max_rel_discrepancy": t.max_rel_discrepancy,
        "tolerance": tol,
        "passed": t.passes(tol),
    })
}

/// Scan table with header `gamma1,gamma2,E1,E2,margin`. Profiles from the
/// two-angle family report θ in the gamma columns.
pub fn scan_csv(reports: &[EquilibriumReport]) -> String {
    let mut out = String::from(SCAN_CSV_HEADER);
    out.push('\n');
    for r in reports {
        let (g1, g2) = match &r.state {
            Some(ReportState::Profile([a, b])) => (a.flip_angle(), b.flip_angle()),
            _ => (f64::NAN, f64::NAN),
        };
        let margin = r.deviation_margin.unwrap_or(f64::NAN);
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            format_float(g1),
            format_float(g2),
            format_float(r.payoffs[0]),
            format_float(r.payoffs[1]),
            format_float(margin)
        );
    }
    out
}
