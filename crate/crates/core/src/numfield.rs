//! Totally real number fields `F = Q[t]/(f)` and their CM quadratic
//! extensions `E = F(√δ)`.
//!
//! Every real embedding of `F` is pinned by a rational isolating interval for
//! a root of `f`; embeddings are indexed from 0 in order of decreasing root,
//! so for a cyclotomic field embedding 0 sends `ζ + ζ⁻¹` to `2cos(2π/r)`.
//! Signs at embeddings are certified by interval refinement and exact zero
//! tests on coordinates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly;
use crate::ring::{Conjugation, Field, Rationals, Ring};
use crate::roots::{self, Interval};
use crate::Rational;

/// Sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_i8(s: i8) -> Sign {
        match s.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i8(self.to_i8() * rhs.to_i8())
    }
}

/// Prescribed signs, one per real embedding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignPattern(pub Vec<Sign>);

impl SignPattern {
    /// `(−, +, …, +)`: negative at embedding 0 only.
    pub fn admissible(degree: usize) -> Self {
        let mut v = vec![Sign::Positive; degree];
        if let Some(first) = v.first_mut() {
            *first = Sign::Negative;
        }
        SignPattern(v)
    }

    pub fn all(degree: usize) -> Vec<SignPattern> {
        (0..1usize << degree)
            .map(|mask| {
                SignPattern(
                    (0..degree)
                        .map(|i| {
                            if mask >> i & 1 == 1 {
                                Sign::Negative
                            } else {
                                Sign::Positive
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Element of a totally real field in the power basis `1, t, …, t^{s-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealElem(pub Vec<Rational>);

impl RealElem {
    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.0[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.0[0].clone())
    }

    fn as_poly(&self) -> Vec<Rational> {
        poly::trim(&Rationals, self.0.clone())
    }
}

impl fmt::Display for RealElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "t".to_string(),
                (1, false) => format!("{mag}*t"),
                (_, true) => format!("t^{i}"),
                (_, false) => format!("{mag}*t^{i}"),
            };
            terms.push((c.is_negative(), body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (neg, body)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// A totally real number field given by a monic irreducible integer
/// polynomial with only real roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotallyRealField {
    min_poly: Vec<Rational>,
    min_poly_int: Vec<BigInt>,
    /// Root isolators, embedding 0 first (decreasing roots).
    isolators: Vec<Interval>,
    /// `t^{s+k}` reduced modulo the minimal polynomial, for `k < s`.
    reductions: Vec<Vec<Rational>>,
}

const INITIAL_ISOLATOR_BITS: u32 = 24;

impl TotallyRealField {
    /// Validates `min_poly` (constant coefficient first): monic, squarefree,
    /// all roots real, irreducible over `Q`.
    pub fn new(min_poly: Vec<BigInt>) -> Result<Self> {
        Self::build(min_poly, true)
    }

    /// Skips only the irreducibility test, whose subset search is
    /// exponential in the degree; for minimal polynomials irreducible by
    /// construction.
    fn new_irreducible(min_poly: Vec<BigInt>) -> Result<Self> {
        Self::build(min_poly, false)
    }

    fn build(min_poly: Vec<BigInt>, check_irreducible: bool) -> Result<Self> {
        let f = poly::from_ints(&min_poly);
        let deg = poly::degree(&f)
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidMinPoly("degree must be at least 1".into()))?;
        if !f[deg].is_one() {
            return Err(Error::InvalidMinPoly("not monic".into()));
        }
        if !roots::is_squarefree(&f) {
            return Err(Error::InvalidMinPoly("not squarefree".into()));
        }
        let mut isolators = roots::isolate_real_roots(&f);
        if isolators.len() != deg {
            return Err(Error::InvalidMinPoly(format!(
                "{} real roots for degree {deg}; field is not totally real",
                isolators.len()
            )));
        }
        if check_irreducible && !roots::is_irreducible_totally_real(&f, &isolators) {
            return Err(Error::InvalidMinPoly("reducible over Q".into()));
        }
        isolators.reverse();
        let width = roots::dyadic(INITIAL_ISOLATOR_BITS);
        let isolators = isolators
            .iter()
            .map(|iso| roots::refine_to(&f, iso, &width))
            .collect();
        let min_poly_int = min_poly[..=deg].to_vec();
        let mut field = TotallyRealField {
            min_poly: f,
            min_poly_int,
            isolators,
            reductions: Vec::new(),
        };
        field.reductions = field.compute_reductions();
        Ok(field)
    }

    /// `Q`, presented by the polynomial `t`.
    pub fn rationals() -> Self {
        Self::new(vec![BigInt::zero(), BigInt::one()]).expect("t is a valid minimal polynomial")
    }

    fn compute_reductions(&self) -> Vec<Vec<Rational>> {
        let s = self.degree();
        let mut out = Vec::new();
        // t^s = -(f_0 + f_1 t + ... + f_{s-1} t^{s-1})
        let mut cur: Vec<Rational> = self.min_poly[..s].iter().map(|c| -c).collect();
        for _ in 0..s {
            out.push(cur.clone());
            // multiply by t and reduce
            let top = cur[s - 1].clone();
            let mut next = vec![Rational::zero(); s];
            for i in 1..s {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..s {
                next[i] -= &top * &self.min_poly[i];
            }
            cur = next;
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly_int
    }

    pub fn isolators(&self) -> &[Interval] {
        &self.isolators
    }

    pub fn is_rational_field(&self) -> bool {
        self.degree() == 1
    }

    /// Generator `t` of the power basis.
    pub fn generator(&self) -> RealElem {
        let mut v = vec![Rational::zero(); self.degree()];
        if self.degree() == 1 {
            v[0] = -&self.min_poly[0];
        } else {
            v[1] = Rational::one();
        }
        RealElem(v)
    }

    pub fn from_coords(&self, coords: Vec<Rational>) -> Result<RealElem> {
        if coords.len() != self.degree() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        Ok(RealElem(coords))
    }

    fn reduce(&self, mut p: Vec<Rational>) -> RealElem {
        let s = self.degree();
        if p.len() > s {
            for d in (s..p.len()).rev() {
                let c = std::mem::take(&mut p[d]);
                if c.is_zero() {
                    continue;
                }
                for (i, r) in self.reductions[d - s].iter().enumerate() {
                    p[i] += &c * r;
                }
            }
            p.truncate(s);
        }
        p.resize(s, Rational::zero());
        RealElem(p)
    }

    /// Certified sign of `x` at real embedding `embedding` (0-based).
    pub fn sign_at(&self, x: &RealElem, embedding: usize) -> Sign {
        if x.is_zero() {
            return Sign::Zero;
        }
        // The field is irreducible, so a nonzero element of degree below s
        // never vanishes at a root and the refinement terminates.
        Sign::from_i8(roots::sign_at_root(
            &self.min_poly,
            &self.isolators[embedding],
            &x.as_poly(),
        ))
    }

    pub fn signs(&self, x: &RealElem) -> Vec<Sign> {
        (0..self.degree()).map(|l| self.sign_at(x, l)).collect()
    }

    pub fn is_totally_positive(&self, x: &RealElem) -> bool {
        self.signs(x).iter().all(|&s| s == Sign::Positive)
    }

    /// Enclosure of `x` at an embedding, refined to the requested width of
    /// the generator interval.
    pub fn enclose(&self, x: &RealElem, embedding: usize, bits: u32) -> Interval {
        let iso = roots::refine_to(
            &self.min_poly,
            &self.isolators[embedding],
            &roots::dyadic(bits),
        );
        roots::eval_interval(&x.as_poly(), &iso)
    }

    /// Field norm `N_{F/Q}`: determinant of multiplication by `x`.
    pub fn norm_to_q(&self, x: &RealElem) -> Rational {
        let s = self.degree();
        let mut basis_image = Vec::with_capacity(s);
        let mut cur = x.clone();
        for _ in 0..s {
            basis_image.push(cur.0.clone());
            cur = self.mul(&cur, &self.generator());
        }
        let m = crate::linalg::Matrix::from_fn(s, s, |i, j| basis_image[j][i].clone());
        crate::linalg::det(&Rationals, &m)
    }

    /// Searches for `λ` whose sign at each embedding matches `pattern`,
    /// enumerating integer power-basis coordinates by increasing max-norm up
    /// to `budget`.
    pub fn weak_approx_find(&self, pattern: &SignPattern, budget: u64) -> Result<RealElem> {
        let s = self.degree();
        if pattern.len() != s {
            return Err(Error::DimensionMismatch(format!(
                "sign pattern has length {}, field degree is {s}",
                pattern.len()
            )));
        }
        if pattern.0.contains(&Sign::Zero) {
            return Err(Error::InvalidParameter(
                "sign pattern entries must be Positive or Negative".into(),
            ));
        }
        for k in 1..=budget as i64 {
            let mut found = None;
            for_each_shell_vector(s, k, |v| {
                let x = RealElem(v.iter().map(|&c| Rational::from_integer(c.into())).collect());
                if self.signs(&x) == pattern.0 {
                    found = Some(x);
                    return true;
                }
                false
            });
            if let Some(x) = found {
                return Ok(x);
            }
        }
        Err(Error::BudgetExceeded {
            what: "searching for an element with the requested signs".into(),
            budget,
        })
    }
}

/// Visits every integer vector of length `s` whose max-norm is exactly `k`,
/// stopping early when `visit` returns `true`.
pub(crate) fn for_each_shell_vector(s: usize, k: i64, mut visit: impl FnMut(&[i64]) -> bool) {
    // Values in the order 0, 1, -1, 2, -2, ..., k, -k.
    let values: Vec<i64> = std::iter::once(0)
        .chain((1..=k).flat_map(|j| [j, -j]))
        .collect();
    let mut idx = vec![0usize; s];
    let mut v = vec![0i64; s];
    loop {
        if v.iter().any(|c| c.abs() == k) && visit(&v) {
            return;
        }
        let mut pos = 0;
        loop {
            if pos == s {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < values.len() {
                v[pos] = values[idx[pos]];
                break;
            }
            idx[pos] = 0;
            v[pos] = 0;
            pos += 1;
        }
    }
}

impl Ring for TotallyRealField {
    type Elem = RealElem;

    fn zero(&self) -> RealElem {
        RealElem(vec![Rational::zero(); self.degree()])
    }
    fn one(&self) -> RealElem {
        let mut v = vec![Rational::zero(); self.degree()];
        v[0] = Rational::one();
        RealElem(v)
    }
    fn add(&self, a: &RealElem, b: &RealElem) -> RealElem {
        RealElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }
    fn sub(&self, a: &RealElem, b: &RealElem) -> RealElem {
        RealElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }
    fn neg(&self, a: &RealElem) -> RealElem {
        RealElem(a.0.iter().map(|x| -x).collect())
    }
    fn mul(&self, a: &RealElem, b: &RealElem) -> RealElem {
        let s = self.degree();
        if s == 1 {
            return RealElem(vec![&a.0[0] * &b.0[0]]);
        }
        let mut prod = vec![Rational::zero(); 2 * s - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }
    fn from_rational(&self, q: &Rational) -> RealElem {
        let mut v = vec![Rational::zero(); self.degree()];
        v[0] = q.clone();
        RealElem(v)
    }
    fn is_zero(&self, a: &RealElem) -> bool {
        a.is_zero()
    }
}

impl Field for TotallyRealField {
    fn inv(&self, a: &RealElem) -> Option<RealElem> {
        if a.is_zero() {
            return None;
        }
        if self.degree() == 1 {
            return Some(RealElem(vec![a.0[0].recip()]));
        }
        let (g, s) = poly::inverse_mod(&Rationals, &a.as_poly(), &self.min_poly);
        debug_assert_eq!(g.len(), 1, "minimal polynomial is irreducible");
        Some(self.reduce(s))
    }
}

impl Conjugation for TotallyRealField {
    fn conj(&self, a: &RealElem) -> RealElem {
        a.clone()
    }
}

/// Element `re + im·√δ` of a CM field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CmElem {
    pub re: RealElem,
    pub im: RealElem,
}

impl CmElem {
    /// Coordinates `[re_0..re_{s-1}, im_0..im_{s-1}]`.
    pub fn coords(&self) -> Vec<Rational> {
        self.re.0.iter().chain(&self.im.0).cloned().collect()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl fmt::Display for CmElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "({})*s", self.im)
        } else {
            write!(f, "{} + ({})*s", self.re, self.im)
        }
    }
}

/// CM field `E = F(√δ)` with `δ` totally negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmField {
    base: Arc<TotallyRealField>,
    delta: RealElem,
    /// `Some(r)` when built as `Q(ζ_r)` with `F = Q(ζ + ζ⁻¹)`.
    cyclotomic: Option<u64>,
}

impl CmField {
    pub fn new(base: Arc<TotallyRealField>, delta: RealElem) -> Result<Self> {
        if delta.0.len() != base.degree() {
            return Err(Error::DimensionMismatch("delta has wrong length".into()));
        }
        if base.signs(&delta).iter().any(|&s| s != Sign::Negative) {
            return Err(Error::NotTotallyNegative(delta.to_string()));
        }
        Ok(CmField {
            base,
            delta,
            cyclotomic: None,
        })
    }

    /// `Q(√d)` for a negative integer `d`.
    pub fn imaginary_quadratic(d: i64) -> Result<Self> {
        let base = Arc::new(TotallyRealField::rationals());
        let delta = base.from_int(d);
        Self::new(base, delta)
    }

    /// `Q(i)` realised as the cyclotomic field of conductor 4 (so `δ = −4`).
    pub fn gaussian() -> Self {
        make_cyclotomic(4).expect("4 is a valid conductor")
    }

    pub fn base(&self) -> &TotallyRealField {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<TotallyRealField> {
        &self.base
    }

    pub fn delta(&self) -> &RealElem {
        &self.delta
    }

    pub fn cyclotomic_conductor(&self) -> Option<u64> {
        self.cyclotomic
    }

    pub fn degree_over_base(&self) -> usize {
        self.base.degree()
    }

    pub fn embed(&self, x: &RealElem) -> CmElem {
        CmElem {
            re: x.clone(),
            im: self.base.zero(),
        }
    }

    pub fn from_rational_pair(&self, re: &Rational, im: &Rational) -> CmElem {
        CmElem {
            re: self.base.from_rational(re),
            im: self.base.from_rational(im),
        }
    }

    /// Builds an element from `2s` coordinates, or `s` coordinates for an
    /// element of `F`.
    pub fn from_coords(&self, coords: Vec<Rational>) -> Result<CmElem> {
        let s = self.base.degree();
        if coords.len() == s {
            return Ok(self.embed(&RealElem(coords)));
        }
        if coords.len() != 2 * s {
            return Err(Error::DimensionMismatch(format!(
                "expected {s} or {} coordinates, got {}",
                2 * s,
                coords.len()
            )));
        }
        let im = coords[s..].to_vec();
        let mut re = coords;
        re.truncate(s);
        Ok(CmElem {
            re: RealElem(re),
            im: RealElem(im),
        })
    }

    pub fn sqrt_delta(&self) -> CmElem {
        CmElem {
            re: self.base.zero(),
            im: self.base.one(),
        }
    }

    /// `N_{E/F}(x) = x·θ(x) = re² − δ·im²`.
    pub fn relative_norm(&self, x: &CmElem) -> RealElem {
        let b = &*self.base;
        b.sub(
            &b.mul(&x.re, &x.re),
            &b.mul(&self.delta, &b.mul(&x.im, &x.im)),
        )
    }

    /// Primitive `r`-th root of unity `(t + √δ)/2`; only for cyclotomic fields.
    pub fn zeta(&self) -> Option<CmElem> {
        self.cyclotomic?;
        let half = Rational::new(1.into(), 2.into());
        Some(CmElem {
            re: self.base.mul(&self.base.generator(), &self.base.from_rational(&half)),
            im: self.base.from_rational(&half),
        })
    }

    /// A primitive `k`-th root of unity, when the field is cyclotomic and
    /// contains one.
    pub fn root_of_unity(&self, k: u64) -> Option<CmElem> {
        let r = self.cyclotomic?;
        if k == 0 {
            return None;
        }
        let (big, zeta_big) = if r % 2 == 1 {
            // -ζ_r^{(r+1)/2} is a primitive 2r-th root of unity.
            let z = self.pow(&self.zeta()?, r.div_ceil(2));
            (2 * r, self.neg(&z))
        } else {
            (r, self.zeta()?)
        };
        if big % k != 0 {
            return None;
        }
        Some(self.pow(&zeta_big, big / k))
    }
}

impl Ring for CmField {
    type Elem = CmElem;

    fn zero(&self) -> CmElem {
        CmElem {
            re: self.base.zero(),
            im: self.base.zero(),
        }
    }
    fn one(&self) -> CmElem {
        CmElem {
            re: self.base.one(),
            im: self.base.zero(),
        }
    }
    fn add(&self, a: &CmElem, b: &CmElem) -> CmElem {
        CmElem {
            re: self.base.add(&a.re, &b.re),
            im: self.base.add(&a.im, &b.im),
        }
    }
    fn sub(&self, a: &CmElem, b: &CmElem) -> CmElem {
        CmElem {
            re: self.base.sub(&a.re, &b.re),
            im: self.base.sub(&a.im, &b.im),
        }
    }
    fn neg(&self, a: &CmElem) -> CmElem {
        CmElem {
            re: self.base.neg(&a.re),
            im: self.base.neg(&a.im),
        }
    }
    fn mul(&self, a: &CmElem, b: &CmElem) -> CmElem {
        let f = &*self.base;
        if a.im.is_zero() && b.im.is_zero() {
            return self.embed(&f.mul(&a.re, &b.re));
        }
        let re = f.add(
            &f.mul(&a.re, &b.re),
            &f.mul(&self.delta, &f.mul(&a.im, &b.im)),
        );
        let im = f.add(&f.mul(&a.re, &b.im), &f.mul(&a.im, &b.re));
        CmElem { re, im }
    }
    fn from_rational(&self, q: &Rational) -> CmElem {
        self.embed(&self.base.from_rational(q))
    }
    fn is_zero(&self, a: &CmElem) -> bool {
        a.is_zero()
    }
}

impl Field for CmField {
    fn inv(&self, a: &CmElem) -> Option<CmElem> {
        let n_inv = self.base.inv(&self.relative_norm(a))?;
        let c = self.conj(a);
        Some(CmElem {
            re: self.base.mul(&c.re, &n_inv),
            im: self.base.mul(&c.im, &n_inv),
        })
    }
}

impl Conjugation for CmField {
    fn conj(&self, a: &CmElem) -> CmElem {
        CmElem {
            re: a.re.clone(),
            im: self.base.neg(&a.im),
        }
    }
}

/// Integer coefficients of the cyclotomic polynomial `Φ_n`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    fn go(n: u64, memo: &mut BTreeMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        for d in (1..n).filter(|d| n % d == 0) {
            let phi_d = go(d, memo);
            num = poly::int_exact_div(&num, &phi_d);
        }
        memo.insert(n, num.clone());
        num
    }
    go(n, &mut BTreeMap::new())
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u64
}

/// Minimal polynomial of `ζ_r + ζ_r⁻¹` from the palindromic `Φ_r`, using
/// `x^k + x^{-k} = D_k(x + x⁻¹)` with `D_0 = 2`, `D_1 = y`,
/// `D_{k+1} = y·D_k − D_{k−1}`.
fn real_cyclotomic_min_poly(r: u64) -> Vec<BigInt> {
    let phi = cyclotomic_polynomial(r);
    let h = (phi.len() - 1) / 2;
    let mut dickson: Vec<Vec<BigInt>> = vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
    for k in 1..h {
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, c) in dickson[k].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in dickson[k - 1].iter().enumerate() {
            next[i] -= c;
        }
        dickson.push(next);
    }
    let mut out = vec![BigInt::zero(); h + 1];
    out[0] = phi[h].clone();
    for k in 1..=h {
        for (i, c) in dickson[k].iter().enumerate() {
            out[i] += &phi[h + k] * c;
        }
    }
    out
}

/// `Q(ζ_r)` as the CM extension `F(√δ)` of `F = Q(ζ_r + ζ_r⁻¹)` with
/// `δ = (ζ_r + ζ_r⁻¹)² − 4`.
pub fn make_cyclotomic(r: u64) -> Result<CmField> {
    if r < 3 || r % 4 == 2 {
        return Err(Error::InvalidParameter(format!(
            "cyclotomic conductor must be at least 3 and not 2 mod 4, got {r}"
        )));
    }
    // The minimal polynomial of 2cos(2π/r) has degree φ(r)/2 = [F : Q].
    let base = TotallyRealField::new_irreducible(real_cyclotomic_min_poly(r))?;
    let t = base.generator();
    let delta = base.sub(&base.mul(&t, &t), &base.from_int(4));
    let mut field = CmField::new(Arc::new(base), delta)?;
    field.cyclotomic = Some(r);
    Ok(field)
}
