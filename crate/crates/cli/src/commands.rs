use std::sync::Arc;

use cmlattice::cyclic_algebra::{self, AlgebraElement, CyclicAlgebra, DivisionVerdict, Membership};
use cmlattice::dgroups::{self, DGroupParams};
use cmlattice::groups::{self, catalog, Budgets, ClassSelector, IntegralRep, MatrixGroup};
use cmlattice::hermitian::{self, Equivalence, HermitianForm, NormResidueVerdict, SignatureProfile};
use cmlattice::json;
use cmlattice::linalg::{self, Matrix};
use cmlattice::numfield::{CmField, RealElem};
use cmlattice::ring::Ring;
use cmlattice::{Error, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::result::CommandResult;

fn pairs_json(profile: &SignatureProfile) -> Value {
    Value::Array(profile.0.iter().map(|p| json!([p.positive, p.negative])).collect())
}

/// A rational determinant class prints as a single string, anything else
/// as its coordinate array.
fn real_json(x: &RealElem) -> Value {
    match x.as_rational() {
        Some(q) => json::rational_to_json(&q),
        None => json::real_elem_to_json(x),
    }
}

fn error_result(e: Error) -> CommandResult {
    match e {
        Error::UnknownClass(msg) => CommandResult::unknown(json!({ "reason": msg }), Vec::new()),
        e => CommandResult::error(e.to_string()),
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return error_result(e),
        }
    };
}

pub fn invariants(h: &HermitianForm) -> CommandResult {
    let inv = h.invariants();
    CommandResult::ok(
        json!({
            "dim": inv.dim,
            "sigma": inv.signatures.signatures(),
            "det_class": real_json(&inv.det_class),
            "signature_pairs": pairs_json(&inv.signatures),
        }),
        vec![
            "signatures from Descartes counts on the characteristic polynomial".into(),
            "det class reduced modulo squares".into(),
        ],
    )
}

pub fn equivalent(h1: &HermitianForm, h2: &HermitianForm, budget: u64) -> CommandResult {
    let verdict = tri!(hermitian::equivalent(h1, h2, budget));
    let trace = vec![
        format!("signature profiles {:?} and {:?}", h1.signature_profile().signatures(), h2.signature_profile().signatures()),
        "determinant ratio tested against relative norms".into(),
    ];
    let payload = |v: Value, name: &str| json!({ "equivalent": v, "verdict": name });
    match verdict {
        Equivalence::Equivalent => CommandResult::ok(payload(json!(true), "Equivalent"), trace),
        Equivalence::NotEquivalent => CommandResult::ok(payload(json!(false), "NotEquivalent"), trace),
        Equivalence::Unknown => CommandResult::unknown(payload(Value::Null, "Unknown"), trace),
    }
}

pub fn admissible(h: &HermitianForm) -> CommandResult {
    let profile = h.signature_profile();
    CommandResult::ok(
        json!({ "admissible": h.is_admissible(), "signature_pairs": pairs_json(&profile) }),
        vec!["signature pair (n − 1, 1) at embedding 0 and definite elsewhere".into()],
    )
}

pub fn average(field: Arc<CmField>, generators: Vec<cmlattice::CmMatrix>, seed: Option<&HermitianForm>, cap: usize) -> CommandResult {
    let Some(dim) = generators.first().map(Matrix::rows) else {
        return CommandResult::error("group has no generators");
    };
    let group = tri!(MatrixGroup::closed(field, dim, generators, cap));
    let h = tri!(groups::average_form(&group, seed));
    CommandResult::ok(
        json!({ "order": group.order(), "form": json::form_to_json(&h) }),
        vec![
            format!("closure reached {} elements", group.order().unwrap_or(0)),
            "gᴴHg = H verified for every element".into(),
            "averaged form positive definite at every embedding".into(),
        ],
    )
}

pub fn embed_first_type(name: &str, budgets: &Budgets) -> CommandResult {
    let Some(entry) = catalog::find(name) else {
        let names: Vec<String> = catalog::catalog().into_iter().map(|e| e.name).collect();
        return CommandResult::error(format!("no catalog entry {name:?}; known: {}", names.join(", ")));
    };
    let out = tri!(groups::embed_first_type(&entry, budgets));
    CommandResult::ok(
        json!({
            "name": entry.name,
            "order": out.order,
            "form": json::form_to_json(&out.form),
            "group": json::generators_to_json(&out.field, &out.generators),
        }),
        vec![
            "form is admissible".into(),
            format!("closure order {} matches the catalog", out.order),
            "gᴴHg = H verified for every element".into(),
        ],
    )
}

pub fn regular_embed(rep: &IntegralRep, field: Arc<CmField>, n: usize, selector: ClassSelector, budgets: &Budgets) -> CommandResult {
    let out = tri!(groups::regular_embed(rep, field, n, selector, budgets));
    let vs_default = tri!(hermitian::equivalent(&out.form, &out.default_form, budgets.norm));
    let class = match selector {
        ClassSelector::Default => "default",
        ClassSelector::Other => "other",
    };
    CommandResult::ok(
        json!({
            "class": class,
            "order": rep.table().order(),
            "admissible": out.form.is_admissible(),
            "form": json::form_to_json(&out.form),
            "equivalent_to_default": format!("{vs_default:?}"),
        }),
        vec![
            "representation is a faithful homomorphism".into(),
            "form is admissible".into(),
            "invariance verified for every group element".into(),
        ],
    )
}

fn dgroup_record(g: &DGroupParams, p: u64) -> Result<Value, Error> {
    let verdict = g.second_type_verdict(p, None)?;
    Ok(json!({
        "m": g.m, "r": g.r, "s": g.s, "t": g.t, "n": g.n,
        "order": g.order(),
        "cyclic": g.is_cyclic(),
        "verdict": verdict.kind.to_string(),
    }))
}

pub fn dgroup_enumerate(max_m: u64, p: u64) -> Result<Vec<Value>, String> {
    dgroups::enumerate_params(max_m)
        .iter()
        .map(|g| dgroup_record(g, p).map_err(|e| e.to_string()))
        .collect()
}

pub fn dgroup_enumerate_result(max_m: u64, p: u64) -> CommandResult {
    match dgroup_enumerate(max_m, p) {
        Ok(records) => CommandResult::ok(
            json!({ "max_m": max_m, "p": p, "groups": records }),
            vec![format!("verdicts for every valid (m, r) with m ≤ {max_m}")],
        ),
        Err(e) => CommandResult::error(e),
    }
}

pub fn dgroup_check(m: u64, r: u64, p: u64, split: Option<(u64, u64)>) -> CommandResult {
    let g = tri!(dgroups::validate(m, r));
    let verdict = tri!(g.second_type_verdict(p, split));
    let mut payload = tri!(dgroup_record(&g, p));
    payload["degrees"] = json!(tri!(g.irreducible_degrees()));
    CommandResult::ok(payload, verdict.trace)
}

pub fn algebra_check(alg: &CyclicAlgebra) -> CommandResult {
    let x = alg.x();
    let x3 = alg.multiply(&alg.multiply(&x, &x), &x);
    if x3 != alg.from_base(alg.alpha()) {
        return CommandResult::error("X³ ≠ α");
    }
    let Some(spec) = alg.involution() else {
        return CommandResult::error("algebra has no involution");
    };
    tri!(alg.verify_involution(spec));
    let norm_x = tri!(alg.reduced_norm(&x));
    CommandResult::ok(
        json!({
            "algebra": cyclic_algebra::algebra_to_json(alg),
            "reduced_norm_X": json::elem_to_json(&norm_x),
        }),
        vec![
            "g(τ(y)) = 0, τ of order 3, c an involution commuting with τ".into(),
            "X³ = α".into(),
            "involution axioms on all 81 basis pairs".into(),
            "splitting of x* is the conjugate transpose on every basis element".into(),
        ],
    )
}

pub fn algebra_norm(alg: &CyclicAlgebra, x: &AlgebraElement) -> CommandResult {
    let n = tri!(alg.reduced_norm(x));
    CommandResult::ok(
        json!({ "reduced_norm": json::elem_to_json(&n) }),
        vec!["determinant of the splitting matrix lies in E".into()],
    )
}

pub fn algebra_membership(alg: &CyclicAlgebra, h: &AlgebraElement, x: &AlgebraElement) -> CommandResult {
    let m = tri!(alg.unitary_membership(h, x));
    let trace = vec!["h* = h and h invertible".into(), "h⁻¹x*hx computed".into()];
    match m {
        Membership::InGroup(lambda) => {
            CommandResult::ok(json!({ "in_group": true, "lambda": json::elem_to_json(&lambda) }), trace)
        }
        Membership::NotInGroup => CommandResult::ok(json!({ "in_group": false, "lambda": null }), trace),
    }
}

pub fn algebra_signature(alg: &CyclicAlgebra, h: &AlgebraElement) -> CommandResult {
    let pairs = tri!(alg.splitting_signature(h));
    CommandResult::ok(
        json!({ "signature_pairs": pairs.iter().map(|p| json!([p.positive, p.negative])).collect::<Vec<_>>() }),
        vec!["Descartes counts of the splitting characteristic polynomial over K".into()],
    )
}

pub fn algebra_division(alg: &CyclicAlgebra, budget: u64) -> CommandResult {
    let trace = vec![format!("searched up to {budget} elements γ ∈ L for N(γ) = α")];
    match alg.is_division_candidate(budget) {
        DivisionVerdict::NotDivision { witness } => CommandResult::ok(
            json!({ "verdict": "NotDivision", "witness": witness.0.iter().map(json::elem_to_json).collect::<Vec<_>>() }),
            trace,
        ),
        DivisionVerdict::IsDivision => CommandResult::ok(json!({ "verdict": "IsDivision" }), trace),
        DivisionVerdict::Unknown => CommandResult::unknown(json!({ "verdict": "Unknown" }), trace),
    }
}

pub fn norm_residue(field: &CmField, d: &RealElem, budget: u64) -> CommandResult {
    let verdict = tri!(hermitian::is_norm(field, d, budget));
    match verdict {
        NormResidueVerdict::IsNorm { witness } => CommandResult::ok(
            json!({ "verdict": "IsNorm", "witness": witness.as_ref().map(json::elem_to_json) }),
            vec!["no local obstruction".into()],
        ),
        NormResidueVerdict::IsNotNorm { obstruction } => CommandResult::ok(
            json!({ "verdict": "IsNotNorm", "obstruction": obstruction.to_string() }),
            vec![format!("obstruction at {obstruction}")],
        ),
        NormResidueVerdict::Unknown => CommandResult::unknown(
            json!({ "verdict": "Unknown" }),
            vec![format!("no witness within {budget} candidates")],
        ),
    }
}

fn random_invertible(e: &CmField, n: usize, rng: &mut impl Rng) -> cmlattice::CmMatrix {
    let d = 2 * e.base().degree();
    loop {
        let t = Matrix::from_fn(n, n, |_, _| {
            let coords = (0..d).map(|_| Rational::from_integer(rng.gen_range(-2i64..=2).into())).collect();
            e.from_coords(coords).expect("coordinate count matches")
        });
        if !e.is_zero(&linalg::det(e, &t)) {
            return t;
        }
    }
}

/// `equivalent(H, TᴴHT)` for `trials` random invertible `T` drawn from `seed`.
pub fn congruence_check(h: &HermitianForm, trials: usize, seed: u64, budget: u64) -> CommandResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unknown = 0usize;
    for k in 0..trials {
        let t = random_invertible(h.field(), h.dim(), &mut rng);
        let moved = tri!(h.congruent(&t));
        match tri!(hermitian::equivalent(h, &moved, budget)) {
            Equivalence::Equivalent => {}
            Equivalence::Unknown => unknown += 1,
            Equivalence::NotEquivalent => {
                return CommandResult::error(format!("trial {k}: TᴴHT reported not equivalent to H"));
            }
        }
    }
    let payload = json!({ "trials": trials, "seed": seed, "unknown": unknown });
    let trace = vec![format!("{trials} random congruences compared by invariants")];
    if unknown > 0 {
        CommandResult::unknown(payload, trace)
    } else {
        CommandResult::ok(payload, trace)
    }
}

pub fn catalog_list() -> CommandResult {
    let entries: Vec<Value> = catalog::catalog()
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "order": e.order,
                "conductor": e.field.cyclotomic_conductor(),
            })
        })
        .collect();
    CommandResult::ok(json!({ "entries": entries }), vec!["catalog data file parsed".into()])
}
