//! Reading fields, forms, groups and algebra elements from files or inline
//! strings. Every failure becomes a message that names the source.

use std::path::Path;
use std::sync::Arc;

use cmlattice::cyclic_algebra::{self, AlgebraElement, CyclicAlgebra};
use cmlattice::groups::{regular_rep, GroupTable, IntegralRep};
use cmlattice::hermitian::HermitianForm;
use cmlattice::json;
use cmlattice::linalg::Matrix;
use cmlattice::numfield::{make_cyclotomic, CmField};
use cmlattice::CmMatrix;
use serde_json::Value;

pub type InputResult<T> = std::result::Result<T, String>;

pub fn read_json(path: &Path) -> InputResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Inline JSON when `arg` starts with `[` or `{`, otherwise a file path.
pub fn json_arg(arg: &str) -> InputResult<Value> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        serde_json::from_str(trimmed).map_err(|e| format!("inline JSON: {e}"))
    } else {
        read_json(Path::new(arg))
    }
}

/// `cyclotomic:R`, `gaussian`, or a field JSON file.
pub fn field(arg: &str) -> InputResult<Arc<CmField>> {
    if arg == "gaussian" {
        return Ok(Arc::new(CmField::gaussian()));
    }
    if let Some(r) = arg.strip_prefix("cyclotomic:") {
        let r: u64 = r.parse().map_err(|e| format!("conductor {r:?}: {e}"))?;
        return make_cyclotomic(r).map(Arc::new).map_err(|e| e.to_string());
    }
    json::field_from_json(&json_arg(arg)?).map_err(|e| format!("{arg}: {e}"))
}

pub fn form(arg: &str) -> InputResult<HermitianForm> {
    json::form_from_json(&json_arg(arg)?).map_err(|e| format!("{arg}: {e}"))
}

pub fn generators(arg: &str) -> InputResult<(Arc<CmField>, Vec<CmMatrix>)> {
    json::generators_from_json(&json_arg(arg)?).map_err(|e| format!("{arg}: {e}"))
}

fn usize_rows(v: &Value, what: &str) -> InputResult<Vec<Vec<usize>>> {
    let err = || format!("{what} must be an array of arrays of nonnegative integers");
    v.as_array()
        .ok_or_else(err)?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(err)?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(err))
                .collect()
        })
        .collect()
}

/// `{"table"}`, `{"permutations"}`, `{"cyclic": n}` or `{"symmetric": k}`,
/// optionally with integral `"images"` of every element in table order;
/// without images the regular representation is used.
pub fn representation(arg: &str) -> InputResult<IntegralRep> {
    let v = json_arg(arg)?;
    let size = |key: &str| v.get(key).map(|n| n.as_u64().map(|n| n as usize).ok_or(format!("{key} must be a positive integer")));
    let table = if let Some(t) = v.get("table") {
        GroupTable::new(usize_rows(t, "table")?)
    } else if let Some(p) = v.get("permutations") {
        GroupTable::from_permutations(&usize_rows(p, "permutations")?)
    } else if let Some(n) = size("cyclic") {
        GroupTable::cyclic(n?)
    } else if let Some(k) = size("symmetric") {
        GroupTable::symmetric(k?)
    } else {
        return Err(format!(
            "{arg}: expected one of \"table\", \"permutations\", \"cyclic\", \"symmetric\""
        ));
    }
    .map_err(|e| format!("{arg}: {e}"))?;
    let Some(images) = v.get("images") else {
        return Ok(regular_rep(&table));
    };
    let images = images
        .as_array()
        .ok_or("images must be an array of integer matrices")?
        .iter()
        .map(|m| {
            let rows: Option<Vec<Vec<i64>>> = m.as_array().and_then(|rows| {
                rows.iter()
                    .map(|r| r.as_array()?.iter().map(Value::as_i64).collect())
                    .collect()
            });
            let rows = rows.ok_or("images must be integer matrices")?;
            Matrix::from_rows(rows).map_err(|e| e.to_string())
        })
        .collect::<InputResult<Vec<_>>>()?;
    IntegralRep::new(table, images).map_err(|e| format!("{arg}: {e}"))
}

/// `builtin` or an algebra JSON file.
pub fn algebra(arg: Option<&str>) -> InputResult<CyclicAlgebra> {
    match arg {
        None | Some("builtin") => Ok(cyclic_algebra::builtin()),
        Some(a) => cyclic_algebra::algebra_from_json(&json_arg(a)?).map_err(|e| format!("{a}: {e}")),
    }
}

/// `1`, `-1`, `X`, `-X`, inline JSON `[β₀, β₁, β₂]` or a file.
pub fn algebra_element(alg: &CyclicAlgebra, arg: &str) -> InputResult<AlgebraElement> {
    match arg {
        "1" => Ok(alg.one()),
        "-1" => Ok(alg.neg(&alg.one())),
        "X" => Ok(alg.x()),
        "-X" => Ok(alg.neg(&alg.x())),
        _ => cyclic_algebra::algebra_element_from_json(alg, &json_arg(arg)?).map_err(|e| format!("{arg}: {e}")),
    }
}
