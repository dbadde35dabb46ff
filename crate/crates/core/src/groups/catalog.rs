//! Finite subgroups of `U(2) × U(1)` with exact cyclotomic generators.
//!
//! Every generator is block diagonal `diag(g, u)` with `g ∈ U(2)` and `u` a
//! root of unity. The binary polyhedral groups come from unit quaternions
//! `a + bi + cj + dk ↦ [[a+bi, c+di], [−c+di, a−bi]]`, except 2I which uses
//! Klein's icosahedral matrices over `Q(ζ₅)`.
//!
//! The shipped data file is produced by [`build_catalog`]; a test keeps the
//! two in agreement.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json;
use crate::linalg::{self, Matrix};
use crate::numfield::{make_cyclotomic, CmElem, CmField};
use crate::ring::{Conjugation, Field, Ring};
use crate::{CmMatrix, Rational};

const CATALOG_DATA: &str = include_str!("../../data/catalog.json");
pub const CATALOG_VERSION: u64 = 1;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub field: Arc<CmField>,
    /// 3×3 block diagonal generators.
    pub generators: Vec<CmMatrix>,
    pub order: usize,
}

/// The shipped catalog.
pub fn catalog() -> Vec<CatalogEntry> {
    let v: Value = serde_json::from_str(CATALOG_DATA).expect("catalog data is valid JSON");
    catalog_from_json(&v).expect("catalog data is well formed")
}

/// Looks up an entry by name, ignoring case, spaces and the spelling of
/// `×`/`ζ` (so `"c_5xzeta_5"` finds `"C_5 × ζ_5"`).
pub fn find(name: &str) -> Option<CatalogEntry> {
    let key = normalize_name(name);
    catalog().into_iter().find(|e| normalize_name(&e.name) == key)
}

fn normalize_name(name: &str) -> String {
    name.to_lowercase()
        .replace('×', "x")
        .replace('ζ', "zeta")
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .collect()
}

pub fn catalog_to_json(entries: &[CatalogEntry]) -> Value {
    json!({
        "version": CATALOG_VERSION,
        "entries": entries.iter().map(|e| json!({
            "name": e.name,
            "order": e.order,
            "field": json::field_to_json(&e.field),
            "generators": e.generators.iter().map(json::matrix_to_json).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn catalog_from_json(v: &Value) -> Result<Vec<CatalogEntry>> {
    if v.get("version").and_then(Value::as_u64) != Some(CATALOG_VERSION) {
        return Err(Error::Parse("unsupported catalog version".into()));
    }
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("catalog has no entry list".into()))?;
    let mut fields: HashMap<String, Arc<CmField>> = HashMap::new();
    entries
        .iter()
        .map(|entry| {
            let name = entry
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("catalog entry without a name".into()))?
                .to_string();
            let order = entry
                .get("order")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("{name}: missing order")))? as usize;
            let field_json = entry
                .get("field")
                .ok_or_else(|| Error::Parse(format!("{name}: missing field")))?;
            let key = field_json.to_string();
            let field = match fields.get(&key) {
                Some(f) => f.clone(),
                None => {
                    let f = json::field_from_json(field_json)?;
                    fields.insert(key, f.clone());
                    f
                }
            };
            let generators = entry
                .get("generators")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("{name}: missing generators")))?
                .iter()
                .map(|g| json::matrix_from_json(&field, g))
                .collect::<Result<Vec<_>>>()?;
            Ok(CatalogEntry {
                name,
                field,
                generators,
                order,
            })
        })
        .collect()
}

struct Builder {
    fields: HashMap<u64, Arc<CmField>>,
    entries: Vec<CatalogEntry>,
}

impl Builder {
    fn field(&mut self, r: u64) -> Result<Arc<CmField>> {
        if let Some(f) = self.fields.get(&r) {
            return Ok(f.clone());
        }
        let f = Arc::new(make_cyclotomic(r)?);
        self.fields.insert(r, f.clone());
        Ok(f)
    }

    fn push(&mut self, name: String, field: Arc<CmField>, generators: Vec<CmMatrix>, order: usize) {
        self.entries.push(CatalogEntry {
            name,
            field,
            generators,
            order,
        });
    }
}

fn root(e: &CmField, k: u64) -> CmElem {
    e.root_of_unity(k)
        .unwrap_or_else(|| panic!("conductor {:?} has no {k}-th root", e.cyclotomic_conductor()))
}

/// `diag(g, u)` for a 2×2 block `g`.
fn block(e: &CmField, g: &CmMatrix, u: CmElem) -> CmMatrix {
    linalg::block_diag(e, &[g, &linalg::diag(e, &[u])])
}

fn diag3(e: &CmField, a: CmElem, b: CmElem, c: CmElem) -> CmMatrix {
    linalg::diag(e, &[a, b, c])
}

/// Unit quaternion `a + bi + cj + dk` as a matrix in `SU(2)`.
fn quaternion(e: &CmField, coeffs: [(i64, i64); 4]) -> CmMatrix {
    let q = |(n, d): (i64, i64)| e.from_rational(&Rational::new(n.into(), d.into()));
    let [a, b, c, d] = coeffs.map(q);
    // `i` is only needed (and only present) when b or d is nonzero.
    let plus_i = |x: &CmElem, y: &CmElem| {
        if y.is_zero() {
            x.clone()
        } else {
            e.add(x, &e.mul(y, &root(e, 4)))
        }
    };
    let a_bi = plus_i(&a, &b);
    let c_di = plus_i(&c, &d);
    Matrix::from_rows(vec![
        vec![a_bi.clone(), c_di.clone()],
        vec![e.neg(&e.conj(&c_di)), e.conj(&a_bi)],
    ])
    .expect("2x2")
}

const QI: [(i64, i64); 4] = [(0, 1), (1, 1), (0, 1), (0, 1)];
const QJ: [(i64, i64); 4] = [(0, 1), (0, 1), (1, 1), (0, 1)];
/// `(−1 + i + j + k)/2`, of order 3.
const QOMEGA: [(i64, i64); 4] = [(-1, 2), (1, 2), (1, 2), (1, 2)];

fn binary_dihedral(e: &CmField, n: u64) -> Vec<CmMatrix> {
    let z = root(e, 2 * n);
    vec![
        linalg::diag(e, &[z.clone(), e.inv(&z).expect("unit")]),
        quaternion(e, QJ),
    ]
}

fn binary_tetrahedral(e: &CmField) -> Vec<CmMatrix> {
    vec![quaternion(e, QI), quaternion(e, QJ), quaternion(e, QOMEGA)]
}

fn binary_octahedral(e: &CmField) -> Vec<CmMatrix> {
    let z8 = root(e, 8);
    vec![
        linalg::diag(e, &[z8.clone(), e.inv(&z8).expect("unit")]),
        quaternion(e, QJ),
        quaternion(e, QOMEGA),
    ]
}

/// Klein's generators `S = diag(ε³, ε²)` and
/// `T = (1/√5)[[−(ε−ε⁴), ε²−ε³], [ε²−ε³, ε−ε⁴]]` with `√5 = 2(ε+ε⁴)+1`.
fn binary_icosahedral(e: &CmField) -> Vec<CmMatrix> {
    let eps = root(e, 5);
    let p = |k: u64| e.pow(&eps, k);
    let sqrt5 = e.add(&e.mul(&e.from_int(2), &e.add(&p(1), &p(4))), &e.one());
    let inv_sqrt5 = e.inv(&sqrt5).expect("nonzero");
    let a = e.mul(&inv_sqrt5, &e.sub(&p(1), &p(4)));
    let b = e.mul(&inv_sqrt5, &e.sub(&p(2), &p(3)));
    let s = linalg::diag(e, &[p(3), p(2)]);
    let t = Matrix::from_rows(vec![vec![e.neg(&a), b.clone()], vec![b, a]]).expect("2x2");
    vec![s, t]
}

fn lift(e: &CmField, gens: &[CmMatrix]) -> Vec<CmMatrix> {
    gens.iter().map(|g| block(e, g, e.one())).collect()
}

/// Builds the catalog from closed-form generators.
pub fn build_catalog() -> Result<Vec<CatalogEntry>> {
    let mut b = Builder {
        fields: HashMap::new(),
        entries: Vec::new(),
    };

    for k in 1..=12u64 {
        let r = match k {
            1 | 2 => 4,
            6 => 3,
            10 => 5,
            _ => k,
        };
        let e = b.field(r)?;
        let g = diag3(&e, root(&e, k), e.one(), e.one());
        b.push(format!("C_{k}"), e, vec![g], k as usize);
    }

    for (k, r) in [(2u64, 4u64), (3, 3), (4, 4), (6, 3)] {
        let e = b.field(r)?;
        let z = root(&e, k);
        let g = diag3(&e, z.clone(), z, e.one());
        b.push(format!("Z_{k}"), e, vec![g], k as usize);
    }

    for k in [3u64, 4, 5, 8] {
        let e = b.field(k)?;
        let z = root(&e, k);
        let g = diag3(&e, z.clone(), e.one(), z);
        b.push(format!("C_{k} × ζ_{k}"), e, vec![g], k as usize);
    }

    let gauss = b.field(4)?;
    let i = root(&gauss, 4);
    let q8 = vec![
        linalg::diag(&*gauss, &[i.clone(), gauss.neg(&i)]),
        quaternion(&gauss, QJ),
    ];
    b.push("Q8".into(), gauss.clone(), lift(&gauss, &q8), 8);

    for (n, r) in [(3u64, 3u64), (4, 8), (5, 5), (6, 12)] {
        let e = b.field(r)?;
        let gens = binary_dihedral(&e, n);
        b.push(format!("2D_{n}"), e.clone(), lift(&e, &gens), 4 * n as usize);
    }

    let t = binary_tetrahedral(&gauss);
    b.push("2T".into(), gauss.clone(), lift(&gauss, &t), 24);

    let e8 = b.field(8)?;
    let o = binary_octahedral(&e8);
    b.push("2O".into(), e8.clone(), lift(&e8, &o), 48);

    let e5 = b.field(5)?;
    let ico = binary_icosahedral(&e5);
    b.push("2I".into(), e5.clone(), lift(&e5, &ico), 120);

    let e3 = b.field(3)?;
    let products: Vec<(&str, Arc<CmField>, Vec<CmMatrix>, u64, usize)> = vec![
        ("Q8", gauss.clone(), q8.clone(), 4, 32),
        ("2T", gauss.clone(), t.clone(), 4, 96),
        ("2D_3", e3.clone(), binary_dihedral(&e3, 3), 6, 72),
        ("2O", e8.clone(), o.clone(), 2, 96),
        ("2I", e5.clone(), ico.clone(), 2, 240),
        ("2I", e5.clone(), ico.clone(), 5, 600),
    ];
    for (name, e, gens, k, order) in products {
        let mut all = lift(&e, &gens);
        all.push(diag3(&e, e.one(), e.one(), root(&e, k)));
        b.push(format!("{name} × ζ_{k}"), e, all, order);
    }

    Ok(b.entries)
}
