//! Candidate-state files for `verify-ne`.
//!
//! Exactly one of the following keys must be present:
//!
//! ```json
//! {"vector":  [[re, im], ... 16 entries]}
//! {"density": [[[re, im], ... 16], ... 16 rows]}
//! {"factors": [[[re, im], ... 4], [[re, im], ... 4]]}
//! {"profile": [{"theta": 0.0, "phi": 1.57}, {"alpha": 0, "beta": 0, "gamma": 3.14}]}
//! ```
//!
//! Vectors and factors are normalized before use.

use anyhow::{anyhow, bail, Result};
use qgame_core::cmatrix::{kron_vec, C64};
use qgame_core::{CMatrix, StrategyDensity, StrategyVector, UnitaryParams};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    vector: Option<Vec<[f64; 2]>>,
    density: Option<Vec<Vec<[f64; 2]>>>,
    factors: Option<[Vec<[f64; 2]>; 2]>,
    profile: Option<[UnitaryParams; 2]>,
}

fn complexes(entries: &[[f64; 2]]) -> Vec<C64> {
    entries.iter().map(|&[re, im]| C64::new(re, im)).collect()
}

fn normalized(v: Vec<C64>, what: &str) -> Result<Vec<C64>> {
    let n = qgame_core::cmatrix::vec_norm(&v);
    if n == 0.0 || !n.is_finite() {
        bail!("{what} has zero or non-finite norm");
    }
    Ok(v.into_iter().map(|z| z / n).collect())
}

pub fn parse_state(text: &str) -> Result<StrategyDensity> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| anyhow!("{e}"))?;
    let given = [
        file.vector.is_some(),
        file.density.is_some(),
        file.factors.is_some(),
        file.profile.is_some(),
    ];
    if given.iter().filter(|&&g| g).count() != 1 {
        bail!("state file needs exactly one of `vector`, `density`, `factors`, `profile`");
    }

    if let Some(v) = file.vector {
        let v = normalized(complexes(&v), "vector")?;
        return Ok(StrategyDensity::pure(&v)?);
    }
    if let Some(rows) = file.density {
        let rows: Vec<Vec<C64>> = rows.iter().map(|r| complexes(r)).collect();
        return Ok(StrategyDensity::new(CMatrix::from_rows(&rows)?)?);
    }
    if let Some([a, b]) = file.factors {
        let a = StrategyVector::from_slice(&normalized(complexes(&a), "first factor")?)?;
        let b = StrategyVector::from_slice(&normalized(complexes(&b), "second factor")?)?;
        return Ok(StrategyDensity::pure(&kron_vec(
            a.as_slice(),
            b.as_slice(),
        ))?);
    }
    let [a, b] = file.profile.expect("one key present");
    if !a.is_finite() || !b.is_finite() {
        bail!("profile angles must be finite");
    }
    Ok(StrategyDensity::pure(&kron_vec(
        a.vector().as_slice(),
        b.vector().as_slice(),
    ))?)
}
