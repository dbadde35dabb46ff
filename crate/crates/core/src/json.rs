//! JSON wire formats.
//!
//! Rationals are strings `"p/q"` (or `"p"`); integers are also accepted on
//! input. A field is `{"min_poly": [...], "delta": [...]}`, optionally tagged
//! `"cyclotomic": r`; the tag alone is enough on input. Elements of `E` are
//! coordinate arrays `[re..., im...]`, and `s` coordinates denote an element
//! of `F`. Matrices are arrays of rows.

use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hermitian::HermitianForm;
use crate::linalg::Matrix;
use crate::numfield::{make_cyclotomic, CmElem, CmField, RealElem, TotallyRealField};
use crate::{CmMatrix, Rational};

fn parse_err(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<Rational>()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| parse_err("an integer or a \"p/q\" string", v)),
        _ => Err(parse_err("a rational", v)),
    }
}

pub fn bigint_to_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(i) => json!(i),
        Err(_) => Value::String(n.to_string()),
    }
}

pub fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| parse_err("an integer", v)),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        _ => Err(parse_err("an integer", v)),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(what, v))
}

fn field_of<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing key {key:?}")))
}

pub fn rationals_to_json(coords: &[Rational]) -> Value {
    Value::Array(coords.iter().map(rational_to_json).collect())
}

pub fn rationals_from_json(v: &Value) -> Result<Vec<Rational>> {
    array(v, "a coordinate array")?
        .iter()
        .map(rational_from_json)
        .collect()
}

pub fn real_elem_to_json(x: &RealElem) -> Value {
    rationals_to_json(x.coords())
}

pub fn real_elem_from_json(field: &TotallyRealField, v: &Value) -> Result<RealElem> {
    field.from_coords(rationals_from_json(v)?)
}

pub fn elem_to_json(x: &CmElem) -> Value {
    rationals_to_json(&x.coords())
}

pub fn elem_from_json(field: &CmField, v: &Value) -> Result<CmElem> {
    field.from_coords(rationals_from_json(v)?)
}

pub fn field_to_json(field: &CmField) -> Value {
    let mut obj = Map::new();
    if let Some(r) = field.cyclotomic_conductor() {
        obj.insert("cyclotomic".into(), json!(r));
    }
    obj.insert(
        "min_poly".into(),
        Value::Array(field.base().min_poly().iter().map(bigint_to_json).collect()),
    );
    obj.insert("delta".into(), real_elem_to_json(field.delta()));
    Value::Object(obj)
}

pub fn field_from_json(v: &Value) -> Result<Arc<CmField>> {
    if !v.is_object() {
        return Err(parse_err("a field object", v));
    }
    let min_poly = v
        .get("min_poly")
        .map(|p| array(p, "a coefficient array")?.iter().map(bigint_from_json).collect())
        .transpose()?;
    if let Some(r) = v.get("cyclotomic") {
        let r = r.as_u64().ok_or_else(|| parse_err("a conductor", r))?;
        let field = make_cyclotomic(r)?;
        if let Some(p) = min_poly {
            if p != field.base().min_poly() {
                return Err(Error::Parse(format!(
                    "min_poly does not match cyclotomic conductor {r}"
                )));
            }
        }
        if let Some(d) = v.get("delta") {
            if real_elem_from_json(field.base(), d)? != *field.delta() {
                return Err(Error::Parse(format!(
                    "delta does not match cyclotomic conductor {r}"
                )));
            }
        }
        return Ok(Arc::new(field));
    }
    let min_poly = min_poly.ok_or_else(|| Error::Parse("missing key \"min_poly\"".into()))?;
    let base = Arc::new(TotallyRealField::new(min_poly)?);
    let delta = real_elem_from_json(&base, field_of(v, "delta")?)?;
    Ok(Arc::new(CmField::new(base, delta)?))
}

pub fn matrix_to_json(m: &CmMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(elem_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(field: &CmField, v: &Value) -> Result<CmMatrix> {
    let rows = array(v, "a matrix")?
        .iter()
        .map(|row| {
            array(row, "a matrix row")?
                .iter()
                .map(|x| elem_from_json(field, x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

pub fn form_to_json(h: &HermitianForm) -> Value {
    json!({
        "field": field_to_json(h.field()),
        "entries": matrix_to_json(h.entries()),
    })
}

pub fn form_from_json(v: &Value) -> Result<HermitianForm> {
    let field = field_from_json(field_of(v, "field")?)?;
    let entries = matrix_from_json(&field, field_of(v, "entries")?)?;
    HermitianForm::new(field, entries)
}

/// `{"field": ..., "generators": [...]}`.
pub fn generators_to_json(field: &CmField, generators: &[CmMatrix]) -> Value {
    json!({
        "field": field_to_json(field),
        "generators": Value::Array(generators.iter().map(matrix_to_json).collect()),
    })
}

pub fn generators_from_json(v: &Value) -> Result<(Arc<CmField>, Vec<CmMatrix>)> {
    let field = field_from_json(field_of(v, "field")?)?;
    let gens = array(field_of(v, "generators")?, "a generator list")?
        .iter()
        .map(|g| matrix_from_json(&field, g))
        .collect::<Result<Vec<_>>>()?;
    Ok((field, gens))
}
