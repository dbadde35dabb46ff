//! The nine acceptance criteria. Runs without the libtest harness so that
//! one PASS/FAIL line per criterion is always printed; exits nonzero if any
//! criterion fails or exceeds its time limit.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use cmlattice::cyclic_algebra::{self, Membership};
use cmlattice::dgroups::{self, VerdictKind};
use cmlattice::groups::{self, closure, regular_embed, regular_rep, Budgets, ClassSelector, GroupTable};
use cmlattice::hermitian::{self, Equivalence, HermitianForm, NormResidueVerdict};
use cmlattice::linalg;
use cmlattice::numfield::{make_cyclotomic, CmField, RealElem, Sign, SignPattern, TotallyRealField};
use cmlattice::ring::Ring;
use cmlattice::{CmMatrix, Rational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn preserves(field: &CmField, h: &CmMatrix, g: &CmMatrix) -> bool {
    linalg::mul(field, &linalg::adjoint(field, g), &linalg::mul(field, h, g)) == *h
}

fn criterion_1() -> Outcome {
    let entries = groups::catalog();
    ensure!(entries.len() >= 10, "only {} catalog entries", entries.len());
    for (name, order) in [("Q8", 8), ("2T", 24), ("2O", 48), ("2I", 120)] {
        let e = entries.iter().find(|e| e.name == name).ok_or(format!("{name} missing"))?;
        ensure!(e.order == order, "{name} has order {}", e.order);
    }
    let budgets = Budgets::default();
    let mut checked = 0;
    for entry in &entries {
        let out = groups::embed_first_type(entry, &budgets).map_err(|e| format!("{}: {e}", entry.name))?;
        ensure!(out.form.is_admissible(), "{}: form not admissible", entry.name);
        let elements = closure(&out.field, 3, &out.generators, budgets.closure_cap).map_err(|e| e.to_string())?;
        ensure!(elements.len() == entry.order, "{}: closure order {}", entry.name, elements.len());
        for g in &elements {
            ensure!(preserves(&out.field, out.form.entries(), g), "{}: gᴴHg ≠ H", entry.name);
        }
        checked += elements.len();
    }
    Ok(format!("{} entries, {checked} group elements checked exactly", entries.len()))
}

/// Independent oracle over `Q(i)/Q` for diagonal integer forms: same
/// dimension, same number of negative entries and a determinant ratio that
/// is a sum of two squares.
fn oracle_equivalent(a: &[i64], b: &[i64]) -> bool {
    let negatives = |x: &[i64]| x.iter().filter(|&&v| v < 0).count();
    if a.len() != b.len() || negatives(a) != negatives(b) {
        return false;
    }
    let product = a.iter().product::<i64>() * b.iter().product::<i64>();
    product > 0 && is_sum_of_two_squares(product)
}

fn is_sum_of_two_squares(n: i64) -> bool {
    (0..).take_while(|a| a * a <= n).any(|a| {
        let rest = n - a * a;
        let b = (rest as f64).sqrt().round() as i64;
        (b - 1..=b + 1).any(|b| b >= 0 && b * b == rest)
    })
}

fn random_diag(rng: &mut ChaCha8Rng, dim: usize) -> Vec<i64> {
    const VALUES: [i64; 8] = [1, -1, 2, -2, 3, -3, 5, -5];
    (0..dim).map(|_| VALUES[rng.gen_range(0..VALUES.len())]).collect()
}

fn random_invertible(e: &CmField, n: usize, rng: &mut ChaCha8Rng) -> CmMatrix {
    loop {
        let t = linalg::Matrix::from_fn(n, n, |_, _| e.from_rational_pair(&q(rng.gen_range(-2..=2)), &q(rng.gen_range(-2..=2))));
        if !e.is_zero(&linalg::det(e, &t)) {
            return t;
        }
    }
}

fn criterion_2() -> Outcome {
    let e = Arc::new(CmField::gaussian());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let budget = hermitian::DEFAULT_NORM_BUDGET;
    let (mut decided, mut congruences) = (0, 0);
    for _ in 0..100 {
        let dim = rng.gen_range(1..=4);
        let a = random_diag(&mut rng, dim);
        let h = HermitianForm::diagonal_ints(e.clone(), &a).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let t = random_invertible(&e, dim, &mut rng);
            let moved = h.congruent(&t).map_err(|e| e.to_string())?;
            let v = hermitian::equivalent(&h, &moved, budget).map_err(|e| e.to_string())?;
            ensure!(v == Equivalence::Equivalent, "{a:?} vs TᴴHT: {v:?}");
            congruences += 1;
        }
        // A partner with the same signature half of the time, so both
        // verdicts are exercised.
        let mut b = random_diag(&mut rng, dim);
        if rng.gen_bool(0.5) {
            for (x, y) in b.iter_mut().zip(&a) {
                *x = x.abs() * y.signum();
            }
        }
        let h2 = HermitianForm::diagonal_ints(e.clone(), &b).map_err(|e| e.to_string())?;
        let v = hermitian::equivalent(&h, &h2, budget).map_err(|e| e.to_string())?;
        ensure!(v != Equivalence::Unknown, "Unknown over Q for {a:?} vs {b:?}");
        ensure!(
            (v == Equivalence::Equivalent) == oracle_equivalent(&a, &b),
            "{a:?} vs {b:?}: {v:?} disagrees with the oracle"
        );
        decided += 1;
    }
    Ok(format!("{congruences} congruences Equivalent, {decided}/{decided} pairs agree with the oracle"))
}

fn criterion_3() -> Outcome {
    let h = HermitianForm::diagonal_ints(Arc::new(CmField::gaussian()), &[1, 1, -1]).map_err(|e| e.to_string())?;
    ensure!(h.is_admissible(), "diag(1, 1, −1) not admissible");
    let sigma = h.signature_profile().signatures();
    ensure!(sigma == vec![1], "σ-profile {sigma:?}");
    Ok("diag(1, 1, −1) admissible with σ = {1}".into())
}

fn criterion_4() -> Outcome {
    let e = Arc::new(CmField::gaussian());
    let budgets = Budgets::default();
    let tables = [
        ("C_2", GroupTable::cyclic(2)),
        ("C_3", GroupTable::cyclic(3)),
        ("S_3", GroupTable::symmetric(3)),
    ];
    let mut runs = 0;
    for (name, table) in tables {
        let table = table.map_err(|e| e.to_string())?;
        let rep = regular_rep(&table);
        let m = rep.dim();
        for n in m + 1..=m + 4 {
            let mut forms = Vec::new();
            for selector in [ClassSelector::Default, ClassSelector::Other] {
                let out = regular_embed(&rep, e.clone(), n, selector, &budgets)
                    .map_err(|err| format!("{name}, n = {n}, {selector:?}: {err}"))?;
                ensure!(out.form.dim() == n && out.form.is_admissible(), "{name}, n = {n}, {selector:?}: not admissible");
                let order = closure(&e, n, &out.images, budgets.closure_cap).map_err(|e| e.to_string())?.len();
                ensure!(order == table.order(), "{name}, n = {n}: closure order {order}");
                for g in &out.images {
                    ensure!(preserves(&e, out.form.entries(), g), "{name}, n = {n}, {selector:?}: not invariant");
                }
                forms.push(out.form);
                runs += 1;
            }
            if n % 2 == 1 {
                let v = hermitian::equivalent(&forms[0], &forms[1], budgets.norm).map_err(|e| e.to_string())?;
                ensure!(v == Equivalence::NotEquivalent, "{name}, n = {n}: classes {v:?}");
            }
        }
    }
    Ok(format!("{runs} embeddings admissible, faithful and invariant; odd-n classes distinct"))
}

fn criterion_5() -> Outcome {
    let params = dgroups::enumerate_params(30);
    let mut nonabelian_n3 = 0;
    for g in &params {
        let label = format!("(m, r) = ({}, {})", g.m, g.r);
        let mn = g.m * g.n;
        let elements = g.elements();
        ensure!(elements.len() as u64 == mn && g.order() == mn, "{label}: {} elements", elements.len());
        let degrees = g.irreducible_degrees().map_err(|e| format!("{label}: {e}"))?;
        ensure!(degrees.iter().map(|d| d * d).sum::<u64>() == mn, "{label}: Σd² ≠ mn");
        ensure!(degrees.iter().all(|d| g.n % d == 0), "{label}: degree not dividing n");
        // Brute-force maximal element order through repeated multiplication.
        let max_order = elements
            .iter()
            .map(|&x| {
                let mut y = x;
                let mut k = 1;
                while y != g.identity() {
                    y = g.multiply(y, x);
                    k += 1;
                }
                k
            })
            .max()
            .unwrap();
        ensure!(
            g.is_cyclic() == (g.n == 1) && (g.n == 1) == (max_order == mn),
            "{label}: cyclic {} n {} max order {max_order}",
            g.is_cyclic(),
            g.n
        );
        let commutes = elements.iter().all(|&x| elements.iter().all(|&y| g.multiply(x, y) == g.multiply(y, x)));
        if !commutes && g.n == 3 {
            let v = g.second_type_verdict(3, None).map_err(|e| e.to_string())?;
            ensure!(v.kind != VerdictKind::CyclicPossible, "{label}: CyclicPossible");
            ensure!(!g.faithful_reducible_exists(3).map_err(|e| e.to_string())?, "{label}: faithful reducible rep");
            nonabelian_n3 += 1;
        }
    }
    Ok(format!("{} groups checked, {nonabelian_n3} nonabelian with n = 3 excluded", params.len()))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for m in 2..=100u64 {
        for r in 1..m {
            if num_integer::gcd(m, r) != 1 {
                continue;
            }
            let g = dgroups::validate(m, r).map_err(|e| e.to_string())?;
            let mut order = 1;
            let mut x = r % m;
            while x != 1 % m {
                x = x * r % m;
                order += 1;
            }
            for p in [3, 5, 7] {
                let filter = g.amitsur_filter(p).map_err(|e| e.to_string())?;
                ensure!(filter == (p % order == 0), "(m, r, p) = ({m}, {r}, {p})");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (m, r, p) triples agree"))
}

fn criterion_7() -> Outcome {
    let e = CmField::gaussian();
    let base = e.base();
    for d in (-200..=200i64).filter(|&d| d != 0) {
        let value = base.from_coords(vec![q(d)]).map_err(|e| e.to_string())?;
        let v = hermitian::is_norm(&e, &value, hermitian::DEFAULT_NORM_BUDGET).map_err(|e| e.to_string())?;
        let expected = d > 0 && is_sum_of_two_squares(d);
        ensure!(!matches!(v, NormResidueVerdict::Unknown), "d = {d}: Unknown");
        ensure!(v.is_norm() == expected, "d = {d}: {v:?}");
        if let NormResidueVerdict::IsNorm { witness: Some(w) } = &v {
            ensure!(e.relative_norm(w) == value, "d = {d}: witness has the wrong norm");
        }
    }
    Ok("400 values agree with sums of two squares".into())
}

fn criterion_8() -> Outcome {
    let alg = cyclic_algebra::builtin();
    let l = alg.ext().clone();
    let e = l.base().clone();
    let x = alg.x();
    ensure!(alg.multiply(&alg.multiply(&x, &x), &x) == alg.from_base(alg.alpha()), "X³ ≠ α");
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut random = || {
        let mut beta = || {
            let coords = (0..6).map(|_| q(rng.gen_range(-3..=3))).collect::<Vec<_>>();
            l.from_coords(&coords).expect("six coordinates")
        };
        cyclic_algebra::AlgebraElement(vec![beta(), beta(), beta()])
    };
    for _ in 0..100 {
        let (a, b) = (random(), random());
        let lhs = alg.reduced_norm(&alg.multiply(&a, &b)).map_err(|e| e.to_string())?;
        let rhs = e.mul(&alg.reduced_norm(&a).map_err(|e| e.to_string())?, &alg.reduced_norm(&b).map_err(|e| e.to_string())?);
        ensure!(lhs == rhs, "reduced norm not multiplicative");
    }
    ensure!(alg.reduced_norm(&x).map_err(|e| e.to_string())? == *alg.alpha(), "Nrd(X) ≠ α");
    let spec = alg.involution().ok_or("no involution")?;
    alg.verify_involution(spec).map_err(|e| e.to_string())?;
    let one = alg.one();
    for sign in [one.clone(), alg.neg(&one)] {
        let m = alg.unitary_membership(&one, &sign).map_err(|e| e.to_string())?;
        ensure!(m == Membership::InGroup(e.one()), "membership of ±1: {m:?}");
    }
    let pairs = alg.splitting_signature(&one).map_err(|e| e.to_string())?;
    ensure!(pairs.iter().all(|p| (p.positive, p.negative) == (3, 0)), "signature of 1: {pairs:?}");
    Ok("relations, 100 norm pairs, 81 involution pairs, membership and signature exact".into())
}

/// `2cos(2πk/r)` for the embeddings of the real cyclotomic subfield, in
/// decreasing order.
fn real_cyclotomic_roots(r: u64) -> Vec<f64> {
    let mut roots: Vec<f64> = (1..=r / 2)
        .filter(|&k| num_integer::gcd(k, r) == 1)
        .map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / r as f64).cos())
        .collect();
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    roots
}

fn float_value(x: &RealElem, root: f64) -> f64 {
    x.coords().iter().rev().fold(0.0, |acc, c| acc * root + c.to_f64().unwrap())
}

fn criterion_9() -> Outcome {
    let fields: Vec<(&str, TotallyRealField, Vec<f64>)> = vec![
        ("Q", TotallyRealField::rationals(), vec![0.0]),
        (
            "Q(√2)",
            TotallyRealField::new(vec![BigInt::from(-2), 0.into(), 1.into()]).map_err(|e| e.to_string())?,
            vec![2f64.sqrt(), -(2f64.sqrt())],
        ),
        (
            "Q(ζ_7)⁺",
            make_cyclotomic(7).map_err(|e| e.to_string())?.base().clone(),
            real_cyclotomic_roots(7),
        ),
    ];
    let mut found = 0;
    for (name, f, roots) in &fields {
        for pattern in SignPattern::all(f.degree()) {
            let x = f
                .weak_approx_find(&pattern, groups::DEFAULT_WEAK_APPROX_BUDGET)
                .map_err(|e| format!("{name}, {pattern:?}: {e}"))?;
            for (emb, want) in pattern.0.iter().enumerate() {
                ensure!(f.sign_at(&x, emb) == *want, "{name}: sign_at disagrees at {emb}");
                let approx = float_value(&x, roots[emb]);
                let float_sign = if approx > 0.0 { Sign::Positive } else { Sign::Negative };
                ensure!(approx.abs() > 1e-9 && float_sign == *want, "{name}: float oracle disagrees at {emb}");
            }
            found += 1;
        }
    }
    Ok(format!("{found} sign patterns realized"))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("catalog groups embed into admissible forms", 60, criterion_1),
        ("equivalence under random congruences and against the oracle", 60, criterion_2),
        ("diag(1, 1, −1) over Q(i) is admissible", 10, criterion_3),
        ("regular-representation embeddings of C_2, C_3, S_3", 60, criterion_4),
        ("D-groups with m ≤ 30", 120, criterion_5),
        ("Amitsur filter against multiplicative orders, m ≤ 100", 30, criterion_6),
        ("norm residues over Q(i) against sums of two squares", 30, criterion_7),
        ("built-in cyclic algebra", 60, criterion_8),
        ("weak approximation over Q, Q(√2), Q(ζ_7)⁺", 30, criterion_9),
    ];
    let mut failures = 0;
    for (k, (title, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(*limit) => Err(format!("exceeded {limit} s")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "criterion {}: {tag} ({:.2} s, limit {limit} s) {title}: {detail}",
            k + 1,
            elapsed.as_secs_f64()
        );
        if outcome.is_err() {
            failures += 1;
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 9 acceptance criteria passed");
}
