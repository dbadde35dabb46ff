//! The degree-3 cyclic algebra `A = (L/E, τ, α)`: elements
//! `β₀ + β₁X + β₂X²` with `βⱼ ∈ L`, `X³ = α` and `Xβ = τ(β)X`.
//!
//! `L = E[y]/(g)` is a cyclic cubic extension of a CM field `E`, with `τ`
//! and the complex conjugation `c` of `L` given as polynomials in `y`. The
//! splitting representation sends `β ↦ diag(β, τβ, τ²β)` and `X` to the
//! companion matrix of `y³ − α`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hermitian::SignaturePair;
use crate::json;
use crate::linalg::{self, Matrix};
use crate::numfield::{for_each_shell_vector, CmElem, CmField, TotallyRealField};
use crate::poly;
use crate::ring::{Conjugation, Field, Ring};
use crate::roots::rational_cbrt;
use crate::Rational;

const BUILTIN_DATA: &str = include_str!("../data/cyclic_algebra.json");

/// `c₀ + c₁y + c₂y²` in `L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LElem(pub Vec<CmElem>);

/// A cyclic cubic extension `L = E[y]/(g)` with generator `τ` of its Galois
/// group and a conjugation `c` extending that of `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicExtension {
    base: Arc<CmField>,
    /// `g₀, g₁, g₂, 1`.
    min_poly: Vec<CmElem>,
    tau: LElem,
    conj: LElem,
    tau_powers: Vec<LElem>,
    conj_powers: Vec<LElem>,
}

impl CubicExtension {
    /// Checks `g(τ(y)) = 0`, `τ³ = id ≠ τ`, `c(y)` a root of `g` with
    /// conjugated coefficients, `c² = id` and `cτ = τc`.
    ///
    /// `g` is not tested for irreducibility over `E` unless its coefficients
    /// are rational and `3 ∤ [E : Q]`, in which case irreducibility over `Q`
    /// suffices and is checked. Otherwise a reducible `g` surfaces later as a
    /// failed inversion.
    pub fn new(base: Arc<CmField>, min_poly: Vec<CmElem>, tau: LElem, conj: LElem) -> Result<Self> {
        let e = &*base;
        if min_poly.len() != 4 || !e.is_one(&min_poly[3]) {
            return Err(Error::InvalidMinPoly("g must be a monic cubic".into()));
        }
        if tau.0.len() != 3 || conj.0.len() != 3 {
            return Err(Error::DimensionMismatch("τ(y) and c(y) need 3 coordinates".into()));
        }
        if let Some(q) = rational_poly(&min_poly) {
            let d = 2 * e.base().degree();
            if d % 3 != 0 && !rational_cubic_irreducible(&q) {
                return Err(Error::InvalidMinPoly("g is reducible over Q".into()));
            }
        }
        let mut ext = CubicExtension {
            base,
            min_poly,
            tau,
            conj,
            tau_powers: Vec::new(),
            conj_powers: Vec::new(),
        };
        ext.tau_powers = (0..3).map(|k| ext.pow(&ext.tau, k)).collect();
        ext.conj_powers = (0..3).map(|k| ext.pow(&ext.conj, k)).collect();

        let y = ext.generator();
        if !ext.is_zero(&ext.eval_min_poly(&ext.tau, false)) {
            return Err(Error::InvariantViolation("g(τ(y)) ≠ 0".into()));
        }
        if ext.tau_apply(&y) == y || ext.tau_apply(&ext.tau_apply(&ext.tau_apply(&y))) != y {
            return Err(Error::InvariantViolation("τ does not have order 3".into()));
        }
        if !ext.is_zero(&ext.eval_min_poly(&ext.conj, true)) {
            return Err(Error::InvariantViolation("c(y) is not a root of θ(g)".into()));
        }
        if ext.conj_apply(&ext.conj_apply(&y)) != y {
            return Err(Error::NotAnInvolution("c² ≠ id on L".into()));
        }
        if ext.conj_apply(&ext.tau_apply(&y)) != ext.tau_apply(&ext.conj_apply(&y)) {
            return Err(Error::InvariantViolation("c and τ do not commute".into()));
        }
        Ok(ext)
    }

    pub fn base(&self) -> &Arc<CmField> {
        &self.base
    }

    pub fn min_poly(&self) -> &[CmElem] {
        &self.min_poly
    }

    pub fn tau_image(&self) -> &LElem {
        &self.tau
    }

    pub fn conj_image(&self) -> &LElem {
        &self.conj
    }

    pub fn generator(&self) -> LElem {
        let e = &*self.base;
        LElem(vec![e.zero(), e.one(), e.zero()])
    }

    pub fn embed(&self, x: &CmElem) -> LElem {
        let e = &*self.base;
        LElem(vec![x.clone(), e.zero(), e.zero()])
    }

    /// The `E`-component when `x ∈ E`.
    pub fn as_base(&self, x: &LElem) -> Option<CmElem> {
        let e = &*self.base;
        (e.is_zero(&x.0[1]) && e.is_zero(&x.0[2])).then(|| x.0[0].clone())
    }

    /// `g(z)`, or `θ(g)(z)` when `conjugate` is set.
    fn eval_min_poly(&self, z: &LElem, conjugate: bool) -> LElem {
        let e = &*self.base;
        let mut acc = self.zero();
        for c in self.min_poly.iter().rev() {
            let c = if conjugate { e.conj(c) } else { c.clone() };
            acc = self.add(&self.mul(&acc, z), &self.embed(&c));
        }
        acc
    }

    fn reduce(&self, p: Vec<CmElem>) -> LElem {
        let e = &*self.base;
        let mut r = poly::rem(e, &p, &self.min_poly);
        r.resize(3, e.zero());
        LElem(r)
    }

    /// `τ(x)`, extended `E`-linearly.
    pub fn tau_apply(&self, x: &LElem) -> LElem {
        self.linear_combination(x, &self.tau_powers, false)
    }

    pub fn tau_pow(&self, x: &LElem, k: usize) -> LElem {
        (0..k % 3).fold(x.clone(), |acc, _| self.tau_apply(&acc))
    }

    /// `c(x)`, extended `θ`-semilinearly.
    pub fn conj_apply(&self, x: &LElem) -> LElem {
        self.linear_combination(x, &self.conj_powers, true)
    }

    fn linear_combination(&self, x: &LElem, powers: &[LElem], conjugate: bool) -> LElem {
        let e = &*self.base;
        let mut acc = self.zero();
        for (c, p) in x.0.iter().zip(powers) {
            if e.is_zero(c) {
                continue;
            }
            let c = if conjugate { e.conj(c) } else { c.clone() };
            acc = self.add(&acc, &self.scale(p, &c));
        }
        acc
    }

    fn scale(&self, x: &LElem, c: &CmElem) -> LElem {
        let e = &*self.base;
        LElem(x.0.iter().map(|xi| e.mul(xi, c)).collect())
    }

    /// `N_{L/E}(x) = x·τ(x)·τ²(x)`.
    pub fn norm(&self, x: &LElem) -> CmElem {
        let t1 = self.tau_apply(x);
        let t2 = self.tau_apply(&t1);
        let n = self.mul(&self.mul(x, &t1), &t2);
        self.as_base(&n).expect("norm of a Galois extension lies in the base")
    }

    /// Coordinates over `Q`: the `E`-coordinates of `c₀`, `c₁`, `c₂` in turn.
    pub fn coords(&self, x: &LElem) -> Vec<Rational> {
        x.0.iter().flat_map(CmElem::coords).collect()
    }

    pub fn from_coords(&self, coords: &[Rational]) -> Result<LElem> {
        let d = 2 * self.base.base().degree();
        if coords.len() != 3 * d {
            return Err(Error::DimensionMismatch(format!(
                "an element of L needs {} coordinates",
                3 * d
            )));
        }
        coords
            .chunks(d)
            .map(|c| self.base.from_coords(c.to_vec()))
            .collect::<Result<Vec<_>>>()
            .map(LElem)
    }
}

fn rational_poly(p: &[CmElem]) -> Option<Vec<Rational>> {
    p.iter()
        .map(|c| {
            if c.im.is_zero() {
                c.re.as_rational()
            } else {
                None
            }
        })
        .collect()
}

/// A monic rational cubic is reducible iff it has a rational root `a/b`
/// with `a | f₀` and `b | f₃` after clearing denominators.
fn rational_cubic_irreducible(p: &[Rational]) -> bool {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};
    let den = p.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    if ints[0].is_zero() {
        return false;
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.abs();
        let mut out = Vec::new();
        let mut d = BigInt::from(1);
        while d <= n {
            if (&n % &d).is_zero() {
                out.push(d.clone());
            }
            d += 1;
        }
        out
    };
    let (lead, constant) = (divisors(&ints[3]), divisors(&ints[0]));
    !constant.iter().any(|a| {
        lead.iter().any(|b| {
            [1, -1].into_iter().any(|sign| {
                let x = Rational::new(a * sign, b.clone());
                poly::eval(&crate::ring::Rationals, p, &x).is_zero()
            })
        })
    })
}

impl Ring for CubicExtension {
    type Elem = LElem;

    fn zero(&self) -> LElem {
        let e = &*self.base;
        LElem(vec![e.zero(), e.zero(), e.zero()])
    }

    fn one(&self) -> LElem {
        self.embed(&self.base.one())
    }

    fn add(&self, a: &LElem, b: &LElem) -> LElem {
        let e = &*self.base;
        LElem(a.0.iter().zip(&b.0).map(|(x, y)| e.add(x, y)).collect())
    }

    fn neg(&self, a: &LElem) -> LElem {
        let e = &*self.base;
        LElem(a.0.iter().map(|x| e.neg(x)).collect())
    }

    fn mul(&self, a: &LElem, b: &LElem) -> LElem {
        let e = &*self.base;
        self.reduce(poly::mul(e, &a.0, &b.0))
    }

    fn from_rational(&self, q: &Rational) -> LElem {
        self.embed(&self.base.from_rational(q))
    }
}

impl Field for CubicExtension {
    fn inv(&self, a: &LElem) -> Option<LElem> {
        let e = &*self.base;
        if self.is_zero(a) {
            return None;
        }
        let (g, s) = poly::inverse_mod(e, &a.0, &self.min_poly);
        assert!(g.len() == 1, "g is reducible over E: a nonzero element is not invertible");
        let mut s = s;
        s.resize(3, e.zero());
        Some(LElem(s))
    }
}

impl Conjugation for CubicExtension {
    fn conj(&self, a: &LElem) -> LElem {
        self.conj_apply(a)
    }
}

/// `β₀ + β₁X + β₂X²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement(pub Vec<LElem>);

/// Outcome of the bounded search for `γ ∈ L` with `N_{L/E}(γ) = α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisionVerdict {
    /// Never produced by the bounded search; kept for callers with an
    /// external certificate.
    IsDivision,
    NotDivision { witness: LElem },
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    InGroup(CmElem),
    NotInGroup,
}

/// A `θ`-semilinear map on `A` given by the images of `yⁱXʲ`, stored at
/// index `3i + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionSpec {
    pub images: Vec<AlgebraElement>,
}

#[derive(Debug, Clone)]
pub struct CyclicAlgebra {
    ext: Arc<CubicExtension>,
    alpha: CmElem,
    alpha_inv: CmElem,
    involution: Option<InvolutionSpec>,
    /// `K = Q[y]/(g)` when `g` is rational, totally real and `c(y) = y`.
    fixed_field: Option<TotallyRealField>,
}

impl CyclicAlgebra {
    pub fn new(ext: Arc<CubicExtension>, alpha: CmElem) -> Result<Self> {
        let e = &**ext.base();
        let alpha_inv = e
            .inv(&alpha)
            .ok_or_else(|| Error::InvalidParameter("α must be nonzero".into()))?;
        let fixed_field = rational_poly(ext.min_poly())
            .filter(|_| ext.conj_image() == &ext.generator())
            .and_then(|q| {
                let ints: Option<Vec<_>> = q
                    .iter()
                    .map(|c| c.is_integer().then(|| c.to_integer()))
                    .collect();
                TotallyRealField::new(ints?).ok()
            });
        let alg = CyclicAlgebra {
            ext,
            alpha,
            alpha_inv,
            involution: None,
            fixed_field,
        };
        let x = alg.x();
        let x3 = alg.multiply(&alg.multiply(&x, &x), &x);
        if x3 != alg.from_base(&alg.alpha) {
            return Err(Error::InvariantViolation("X³ ≠ α".into()));
        }
        Ok(alg)
    }

    /// Attaches an involution after [`verify_involution`](Self::verify_involution).
    pub fn with_involution(mut self, spec: InvolutionSpec) -> Result<Self> {
        self.verify_involution(&spec)?;
        self.involution = Some(spec);
        Ok(self)
    }

    pub fn ext(&self) -> &Arc<CubicExtension> {
        &self.ext
    }

    pub fn alpha(&self) -> &CmElem {
        &self.alpha
    }

    pub fn involution(&self) -> Option<&InvolutionSpec> {
        self.involution.as_ref()
    }

    pub fn fixed_field(&self) -> Option<&TotallyRealField> {
        self.fixed_field.as_ref()
    }

    fn l(&self) -> &CubicExtension {
        &self.ext
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement(vec![self.l().zero(); 3])
    }

    pub fn one(&self) -> AlgebraElement {
        self.from_l(&self.l().one())
    }

    pub fn x(&self) -> AlgebraElement {
        let l = self.l();
        AlgebraElement(vec![l.zero(), l.one(), l.zero()])
    }

    pub fn from_l(&self, beta: &LElem) -> AlgebraElement {
        let l = self.l();
        AlgebraElement(vec![beta.clone(), l.zero(), l.zero()])
    }

    pub fn from_base(&self, lambda: &CmElem) -> AlgebraElement {
        self.from_l(&self.l().embed(lambda))
    }

    /// `yⁱXʲ`.
    pub fn basis(&self, i: usize, j: usize) -> AlgebraElement {
        let l = self.l();
        let mut out = self.zero();
        out.0[j] = l.pow(&l.generator(), i as u64);
        out
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let l = self.l();
        AlgebraElement(a.0.iter().zip(&b.0).map(|(x, y)| l.add(x, y)).collect())
    }

    pub fn neg(&self, a: &AlgebraElement) -> AlgebraElement {
        let l = self.l();
        AlgebraElement(a.0.iter().map(|x| l.neg(x)).collect())
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.add(a, &self.neg(b))
    }

    /// `(ΣβᵢXⁱ)(ΣγⱼXʲ) = Σ βᵢτⁱ(γⱼ)X^{i+j}` with `X³ = α`.
    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let l = self.l();
        let alpha = l.embed(&self.alpha);
        let mut out = vec![l.zero(); 3];
        for (i, bi) in a.0.iter().enumerate() {
            if l.is_zero(bi) {
                continue;
            }
            for (j, gj) in b.0.iter().enumerate() {
                if l.is_zero(gj) {
                    continue;
                }
                let mut term = l.mul(bi, &l.tau_pow(gj, i));
                if i + j >= 3 {
                    term = l.mul(&term, &alpha);
                }
                let k = (i + j) % 3;
                out[k] = l.add(&out[k], &term);
            }
        }
        AlgebraElement(out)
    }

    /// `Σ diag(βᵢ, τβᵢ, τ²βᵢ)·Mᵢ` with `M` the companion matrix of `y³ − α`.
    pub fn splitting_matrix(&self, x: &AlgebraElement) -> Matrix<LElem> {
        let l = self.l();
        let alpha = l.embed(&self.alpha);
        let mut m = linalg::zeros(l, 3, 3);
        // Row r of Xⁱ has its 1 (or α, on wrapping) in column (r + i) mod 3.
        for (i, beta) in x.0.iter().enumerate() {
            for r in 0..3 {
                let c = (r + i) % 3;
                let mut v = l.tau_pow(beta, r);
                if r + i >= 3 {
                    v = l.mul(&v, &alpha);
                }
                let cur = m.get(r, c).clone();
                m.set(r, c, l.add(&cur, &v));
            }
        }
        m
    }

    /// Inverse of [`splitting_matrix`](Self::splitting_matrix) on its image.
    pub fn from_splitting_matrix(&self, m: &Matrix<LElem>) -> Result<AlgebraElement> {
        let l = self.l();
        let ainv = l.embed(&self.alpha_inv);
        let b0 = m.get(0, 0).clone();
        let b1 = l.tau_apply(&l.mul(m.get(2, 0), &ainv));
        let b2 = l.tau_pow(&l.mul(m.get(1, 0), &ainv), 2);
        let x = AlgebraElement(vec![b0, b1, b2]);
        if self.splitting_matrix(&x) != *m {
            return Err(Error::InvariantViolation("matrix is not in the image of A".into()));
        }
        Ok(x)
    }

    /// `det` of the splitting matrix, checked to lie in `E`.
    pub fn reduced_norm(&self, x: &AlgebraElement) -> Result<CmElem> {
        let d = linalg::det(self.l(), &self.splitting_matrix(x));
        self.l()
            .as_base(&d)
            .ok_or_else(|| Error::InvariantViolation("reduced norm is not in E".into()))
    }

    pub fn inverse(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        let m = linalg::inverse(self.l(), &self.splitting_matrix(x))?;
        self.from_splitting_matrix(&m)
    }

    /// Searches `γ` with integer coordinates for `N_{L/E}(γ) = α·c³`,
    /// `c ∈ Q`; then `γ/c` is a norm witness.
    pub fn is_division_candidate(&self, budget: u64) -> DivisionVerdict {
        let l = self.l();
        let e = &**l.base();
        let dim = 3 * 2 * e.base().degree();
        let mut tried = 0u64;
        let mut k = 1i64;
        let mut witness = None;
        while tried < budget && witness.is_none() {
            for_each_shell_vector(dim, k, |v| {
                tried += 1;
                let coords: Vec<Rational> = v.iter().map(|&c| Rational::from_integer(c.into())).collect();
                let gamma = l.from_coords(&coords).expect("dimension matches");
                let ratio = e.mul(&l.norm(&gamma), &self.alpha_inv);
                let cube = ratio
                    .im
                    .is_zero()
                    .then(|| ratio.re.as_rational())
                    .flatten()
                    .and_then(|q| rational_cbrt(&q))
                    .filter(|c| *c != Rational::from_integer(0.into()));
                if let Some(c) = cube {
                    witness = Some(l.mul(&gamma, &l.from_rational(&c.recip())));
                    return true;
                }
                tried >= budget
            });
            k += 1;
        }
        match witness {
            Some(w) => DivisionVerdict::NotDivision { witness: w },
            None => DivisionVerdict::Unknown,
        }
    }

    /// `λ* = c(λ)` on `L` and `X* = X⁻¹ = α⁻¹X²`; an involution of the
    /// second kind exactly when `α·θ(α) = 1`.
    pub fn standard_involution(&self) -> InvolutionSpec {
        let l = self.l();
        let x_star = AlgebraElement(vec![l.zero(), l.zero(), l.embed(&self.alpha_inv)]);
        let images = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut xj = self.one();
                for _ in 0..j {
                    xj = self.multiply(&xj, &x_star);
                }
                let yi = l.conj_apply(&l.pow(&l.generator(), i as u64));
                self.multiply(&xj, &self.from_l(&yi))
            })
            .collect();
        InvolutionSpec { images }
    }

    /// `x*` for the semilinear map `spec`.
    pub fn apply_involution(&self, spec: &InvolutionSpec, x: &AlgebraElement) -> AlgebraElement {
        let l = self.l();
        let e = &**l.base();
        let mut out = self.zero();
        for (j, beta) in x.0.iter().enumerate() {
            for (i, c) in beta.0.iter().enumerate() {
                if e.is_zero(c) {
                    continue;
                }
                let img = &spec.images[3 * i + j];
                let cc = e.conj(c);
                let scaled = AlgebraElement(img.0.iter().map(|b| l.scale(b, &cc)).collect());
                out = self.add(&out, &scaled);
            }
        }
        out
    }

    /// `x*` under the attached involution.
    pub fn star(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        let spec = self
            .involution
            .as_ref()
            .ok_or_else(|| Error::NotAnInvolution("no involution attached".into()))?;
        Ok(self.apply_involution(spec, x))
    }

    /// Checks `(ab)* = b*a*` on all 81 basis pairs, `(b*)* = b`, `1* = 1`,
    /// `(√δ)* = −√δ`, and that the splitting matrix of `b*` is the
    /// conjugate transpose of that of `b`.
    pub fn verify_involution(&self, spec: &InvolutionSpec) -> Result<()> {
        let l = self.l();
        if spec.images.len() != 9 || spec.images.iter().any(|x| x.0.len() != 3) {
            return Err(Error::NotAnInvolution("expected 9 basis images".into()));
        }
        let star = |x: &AlgebraElement| self.apply_involution(spec, x);
        let basis: Vec<((usize, usize), AlgebraElement)> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| ((i, j), self.basis(i, j)))
            .collect();
        for (p, a) in &basis {
            for (q, b) in &basis {
                if star(&self.multiply(a, b)) != self.multiply(&star(b), &star(a)) {
                    return Err(Error::NotAnInvolution(format!(
                        "(y^{}X^{} · y^{}X^{})* ≠ (y^{}X^{})*(y^{}X^{})*",
                        p.0, p.1, q.0, q.1, q.0, q.1, p.0, p.1
                    )));
                }
            }
            if star(&star(a)) != *a {
                return Err(Error::NotAnInvolution(format!("(y^{}X^{})** ≠ y^{}X^{}", p.0, p.1, p.0, p.1)));
            }
            let lhs = self.splitting_matrix(&star(a));
            let rhs = linalg::adjoint(l, &self.splitting_matrix(a));
            if lhs != rhs {
                return Err(Error::NotAnInvolution(format!(
                    "splitting of (y^{}X^{})* is not the conjugate transpose",
                    p.0, p.1
                )));
            }
        }
        if star(&self.one()) != self.one() {
            return Err(Error::NotAnInvolution("1* ≠ 1".into()));
        }
        let e = &**l.base();
        let s = self.from_base(&e.sqrt_delta());
        if star(&s) != self.neg(&s) {
            return Err(Error::NotAnInvolution("* does not restrict to θ on E".into()));
        }
        Ok(())
    }

    fn check_hermitian(&self, h: &AlgebraElement) -> Result<()> {
        if self.star(h)? != *h {
            return Err(Error::InvalidParameter("h is not hermitian (h* ≠ h)".into()));
        }
        Ok(())
    }

    /// `InGroup(λ)` when `h⁻¹x*hx = λ ∈ E` with `λ³ = 1`.
    pub fn unitary_membership(&self, h: &AlgebraElement, x: &AlgebraElement) -> Result<Membership> {
        self.check_hermitian(h)?;
        let e = &**self.l().base();
        if e.is_zero(&self.reduced_norm(h)?) {
            return Err(Error::InvalidParameter("h is not invertible".into()));
        }
        let hinv = self.inverse(h)?;
        let prod = self.multiply(&self.multiply(&hinv, &self.star(x)?), &self.multiply(h, x));
        let scalar = (self.l().is_zero(&prod.0[1]) && self.l().is_zero(&prod.0[2]))
            .then(|| self.l().as_base(&prod.0[0]))
            .flatten();
        Ok(match scalar {
            Some(lambda) if e.is_one(&e.pow(&lambda, 3)) => Membership::InGroup(lambda),
            _ => Membership::NotInGroup,
        })
    }

    /// Signature pairs of the hermitian matrix `splitting(h)` at each real
    /// embedding of `K`, embedding 0 sending `y` to the largest root of `g`.
    pub fn splitting_signature(&self, h: &AlgebraElement) -> Result<Vec<SignaturePair>> {
        self.check_hermitian(h)?;
        let k = self.fixed_field.as_ref().ok_or_else(|| {
            Error::InvalidParameter("signatures need a rational totally real g with c(y) = y".into())
        })?;
        let l = self.l();
        let m = self.splitting_matrix(h);
        if l.is_zero(&linalg::det(l, &m)) {
            return Err(Error::DegenerateForm);
        }
        let cp: Vec<crate::numfield::RealElem> = linalg::char_poly(l, &m)
            .iter()
            .map(|c| {
                let coords: Option<Vec<Rational>> = c
                    .0
                    .iter()
                    .map(|x| if x.im.is_zero() { x.re.as_rational() } else { None })
                    .collect();
                coords
                    .map(crate::numfield::RealElem)
                    .ok_or_else(|| Error::InvariantViolation("characteristic polynomial is not over K".into()))
            })
            .collect::<Result<_>>()?;
        Ok((0..k.degree())
            .map(|emb| {
                let positive = poly::sign_variations(cp.iter().map(|c| k.sign_at(c, emb).to_i8()));
                SignaturePair {
                    positive,
                    negative: 3 - positive,
                }
            })
            .collect())
    }
}

fn l_elem_to_json(x: &LElem) -> Value {
    Value::Array(x.0.iter().map(json::elem_to_json).collect())
}

fn l_elem_from_json(e: &CmField, v: &Value) -> Result<LElem> {
    let items = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| Error::Parse(format!("expected 3 elements of E, found {v}")))?;
    items.iter().map(|x| json::elem_from_json(e, x)).collect::<Result<Vec<_>>>().map(LElem)
}

pub fn algebra_element_to_json(x: &AlgebraElement) -> Value {
    Value::Array(x.0.iter().map(l_elem_to_json).collect())
}

pub fn algebra_element_from_json(alg: &CyclicAlgebra, v: &Value) -> Result<AlgebraElement> {
    let e = &**alg.ext.base();
    let items = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| Error::Parse(format!("expected [β₀, β₁, β₂], found {v}")))?;
    items.iter().map(|x| l_elem_from_json(e, x)).collect::<Result<Vec<_>>>().map(AlgebraElement)
}

/// `{"E", "g", "tau", "conj", "alpha", "involution"}`.
pub fn algebra_to_json(alg: &CyclicAlgebra) -> Value {
    let ext = &alg.ext;
    let mut v = json!({
        "E": json::field_to_json(ext.base()),
        "g": ext.min_poly().iter().map(json::elem_to_json).collect::<Vec<_>>(),
        "tau": l_elem_to_json(ext.tau_image()),
        "conj": l_elem_to_json(ext.conj_image()),
        "alpha": json::elem_to_json(&alg.alpha),
    });
    if let Some(spec) = &alg.involution {
        v["involution"] = Value::Array(spec.images.iter().map(algebra_element_to_json).collect());
    }
    v
}

pub fn algebra_from_json(v: &Value) -> Result<CyclicAlgebra> {
    let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing key {k:?}")));
    let e = json::field_from_json(get("E")?)?;
    let g = get("g")?
        .as_array()
        .ok_or_else(|| Error::Parse("g must be an array".into()))?
        .iter()
        .map(|c| json::elem_from_json(&e, c))
        .collect::<Result<Vec<_>>>()?;
    let tau = l_elem_from_json(&e, get("tau")?)?;
    let conj = l_elem_from_json(&e, get("conj")?)?;
    let alpha = json::elem_from_json(&e, get("alpha")?)?;
    let ext = Arc::new(CubicExtension::new(e, g, tau, conj)?);
    let alg = CyclicAlgebra::new(ext, alpha)?;
    match v.get("involution") {
        None => Ok(alg),
        Some(images) => {
            let images = images
                .as_array()
                .ok_or_else(|| Error::Parse("involution must be an array".into()))?
                .iter()
                .map(|x| algebra_element_from_json(&alg, x))
                .collect::<Result<Vec<_>>>()?;
            alg.with_involution(InvolutionSpec { images })
        }
    }
}

/// `E = Q(i)`, `L = E(η)` with `η = ζ₇ + ζ₇⁻¹` a root of `y³ + y² − 2y − 1`,
/// `τ(η) = η² − 2`, `c(η) = η`, and `α = (3 + 4i)/5 = (2 + i)/(2 − i)`.
///
/// `(2 + i)` lies over 5, which is inert in `Q(η)`, so it is inert in `L/E`;
/// `α` has valuation 1 there and is not a norm, hence `A` is a division
/// algebra. `|α| = 1` makes `X* = X⁻¹` an involution of the second kind.
pub fn build_builtin() -> Result<CyclicAlgebra> {
    let e = Arc::new(CmField::gaussian());
    let ints = |xs: &[i64]| xs.iter().map(|&x| e.from_int(x)).collect::<Vec<_>>();
    let g = ints(&[-1, -2, 1, 1]);
    let tau = LElem(ints(&[-2, 0, 1]));
    let conj = LElem(ints(&[0, 1, 0]));
    let i = e.root_of_unity(4).expect("Q(i)");
    let fifth = |n: i64| e.from_rational(&Rational::new(n.into(), 5.into()));
    let alpha = e.add(&fifth(3), &e.mul(&fifth(4), &i));
    let ext = Arc::new(CubicExtension::new(e.clone(), g, tau, conj)?);
    let alg = CyclicAlgebra::new(ext, alpha)?;
    let spec = alg.standard_involution();
    alg.with_involution(spec)
}

/// The shipped example, loaded from its data file.
pub fn builtin() -> CyclicAlgebra {
    let v: Value = serde_json::from_str(BUILTIN_DATA).expect("algebra data is valid JSON");
    algebra_from_json(&v).expect("algebra data is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_l(alg: &CyclicAlgebra, rng: &mut impl Rng) -> LElem {
        let coords: Vec<Rational> = (0..6)
            .map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into()))
            .collect();
        alg.ext().from_coords(&coords).unwrap()
    }

    fn random_element(alg: &CyclicAlgebra, rng: &mut impl Rng) -> AlgebraElement {
        AlgebraElement((0..3).map(|_| random_l(alg, rng)).collect())
    }

    #[test]
    fn data_file_matches_builder() {
        let built = build_builtin().unwrap();
        let shipped: Value = serde_json::from_str(BUILTIN_DATA).unwrap();
        assert_eq!(algebra_to_json(&built), shipped, "regenerate data/cyclic_algebra.json");
    }

    /// Rewrites the shipped data file from the builder.
    #[test]
    #[ignore]
    fn regenerate_data_file() {
        let v = algebra_to_json(&build_builtin().unwrap());
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/cyclic_algebra.json");
        std::fs::write(path, serde_json::to_string_pretty(&v).unwrap() + "\n").unwrap();
    }

    #[test]
    fn extension_rejects_bad_tau() {
        let e = Arc::new(CmField::gaussian());
        let ints = |xs: &[i64]| xs.iter().map(|&x| e.from_int(x)).collect::<Vec<_>>();
        let g = ints(&[-1, -2, 1, 1]);
        let id = LElem(ints(&[0, 1, 0]));
        assert!(CubicExtension::new(e.clone(), g.clone(), id.clone(), id.clone()).is_err());
        // y³ − 2 is not normal; y ↦ y² has the wrong order
        let bad = LElem(ints(&[0, 0, 1]));
        assert!(CubicExtension::new(e.clone(), ints(&[-2, 0, 0, 1]), bad, id.clone()).is_err());
        // reducible: (y − 1)(y² + y + 1)
        assert!(CubicExtension::new(e.clone(), ints(&[-1, 0, 0, 1]), id.clone(), id).is_err());
    }

    #[test]
    fn relations() {
        let alg = builtin();
        let x = alg.x();
        let x2 = alg.multiply(&x, &x);
        assert_eq!(alg.multiply(&x, &x2), alg.from_base(alg.alpha()));
        let eta = alg.ext().generator();
        let lhs = alg.multiply(&x, &alg.from_l(&eta));
        let mut rhs = alg.zero();
        rhs.0[1] = alg.ext().tau_apply(&eta);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn splitting_examples() {
        let alg = builtin();
        let l = alg.ext();
        let e = l.base();
        let lambda = e.from_int(7);
        let m = alg.splitting_matrix(&alg.from_base(&lambda));
        assert_eq!(m, linalg::scale(&**l, &linalg::identity(&**l, 3), &l.embed(&lambda)));
        let eta = l.generator();
        let m = alg.splitting_matrix(&alg.from_l(&eta));
        let t1 = l.tau_apply(&eta);
        let t2 = l.tau_apply(&t1);
        assert_eq!(m, linalg::diag(&**l, &[eta, t1, t2]));
        let mx = alg.splitting_matrix(&alg.x());
        assert_eq!(*mx.get(0, 1), l.one());
        assert_eq!(*mx.get(1, 2), l.one());
        assert_eq!(*mx.get(2, 0), l.embed(alg.alpha()));
    }

    #[test]
    fn reduced_norm_examples() {
        let alg = builtin();
        let e = alg.ext().base().clone();
        let lambda = e.from_rational_pair(&Rational::from_integer(2.into()), &Rational::from_integer(1.into()));
        assert_eq!(alg.reduced_norm(&alg.from_base(&lambda)).unwrap(), e.pow(&lambda, 3));
        assert_eq!(alg.reduced_norm(&alg.x()).unwrap(), *alg.alpha());
        assert_eq!(alg.reduced_norm(&alg.one()).unwrap(), e.one());
    }

    #[test]
    fn one_plus_x_times_one_minus_x() {
        let alg = builtin();
        let (one, x) = (alg.one(), alg.x());
        let prod = alg.multiply(&alg.add(&one, &x), &alg.sub(&one, &x));
        assert_eq!(prod, alg.sub(&one, &alg.multiply(&x, &x)));
        let sm = linalg::mul(
            &**alg.ext(),
            &alg.splitting_matrix(&alg.add(&one, &x)),
            &alg.splitting_matrix(&alg.sub(&one, &x)),
        );
        assert_eq!(sm, alg.splitting_matrix(&prod));
    }

    #[test]
    fn division_candidate_examples() {
        let alg = builtin();
        let l = alg.ext().clone();
        let e = l.base().clone();
        let trivial = CyclicAlgebra::new(l.clone(), e.one()).unwrap();
        assert_eq!(
            trivial.is_division_candidate(100),
            DivisionVerdict::NotDivision { witness: l.one() }
        );
        let shifted = l.add(&l.generator(), &l.from_int(3));
        let alpha = l.norm(&shifted);
        assert_eq!(alpha, e.from_int(13));
        let constructed = CyclicAlgebra::new(l.clone(), alpha.clone()).unwrap();
        match constructed.is_division_candidate(200_000) {
            DivisionVerdict::NotDivision { witness } => assert_eq!(l.norm(&witness), alpha),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(alg.is_division_candidate(2_000), DivisionVerdict::Unknown);
    }

    #[test]
    fn involution_axioms() {
        let alg = builtin();
        let spec = alg.involution().unwrap().clone();
        alg.verify_involution(&spec).unwrap();
        assert_eq!(alg.star(&alg.one()).unwrap(), alg.one());
        let e = alg.ext().base().clone();
        let i = e.root_of_unity(4).unwrap();
        assert_eq!(alg.star(&alg.from_base(&i)).unwrap(), alg.from_base(&e.conj(&i)));

        let mut broken = spec.clone();
        broken.images[1] = alg.x();
        assert!(matches!(alg.verify_involution(&broken), Err(Error::NotAnInvolution(_))));
    }

    #[test]
    fn membership_examples() {
        let alg = builtin();
        let one = alg.one();
        let e = alg.ext().base().clone();
        assert_eq!(alg.unitary_membership(&one, &one).unwrap(), Membership::InGroup(e.one()));
        assert_eq!(
            alg.unitary_membership(&one, &alg.neg(&one)).unwrap(),
            Membership::InGroup(e.one())
        );
        assert_eq!(alg.unitary_membership(&one, &alg.x()).unwrap(), Membership::InGroup(e.one()));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = random_element(&alg, &mut rng);
        assert_eq!(alg.unitary_membership(&one, &x).unwrap(), Membership::NotInGroup);
        assert!(alg.unitary_membership(&alg.x(), &one).is_err());

        // X·X* = 1, so powers of X and their products with -1 are unitary and
        // so are their inverses.
        let x = alg.x();
        let x2 = alg.multiply(&x, &x);
        for g in [x.clone(), x2, alg.neg(&x)] {
            assert!(matches!(alg.unitary_membership(&one, &g).unwrap(), Membership::InGroup(_)));
            let inv = alg.inverse(&g).unwrap();
            assert!(matches!(alg.unitary_membership(&one, &inv).unwrap(), Membership::InGroup(_)));
        }
    }

    #[test]
    fn signature_examples() {
        let alg = builtin();
        let pairs = |h: &AlgebraElement| -> Vec<(usize, usize)> {
            alg.splitting_signature(h)
                .unwrap()
                .iter()
                .map(|p| (p.positive, p.negative))
                .collect()
        };
        assert_eq!(pairs(&alg.one()), vec![(3, 0); 3]);
        assert_eq!(pairs(&alg.neg(&alg.one())), vec![(0, 3); 3]);
        let minus_eta = alg.from_l(&alg.ext().neg(&alg.ext().generator()));
        assert_eq!(pairs(&minus_eta)[0], (2, 1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn splitting_is_multiplicative(seed in any::<u64>()) {
            let alg = builtin();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b) = (random_element(&alg, &mut rng), random_element(&alg, &mut rng));
            let lhs = alg.splitting_matrix(&alg.multiply(&a, &b));
            let rhs = linalg::mul(&**alg.ext(), &alg.splitting_matrix(&a), &alg.splitting_matrix(&b));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduced_norm_is_multiplicative(seed in any::<u64>()) {
            let alg = builtin();
            let e = alg.ext().base().clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b) = (random_element(&alg, &mut rng), random_element(&alg, &mut rng));
            let lhs = alg.reduced_norm(&alg.multiply(&a, &b)).unwrap();
            let rhs = e.mul(&alg.reduced_norm(&a).unwrap(), &alg.reduced_norm(&b).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_round_trips(seed in any::<u64>()) {
            let alg = builtin();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_element(&alg, &mut rng);
            prop_assume!(!alg.ext().base().is_zero(&alg.reduced_norm(&a).unwrap()));
            let inv = alg.inverse(&a).unwrap();
            prop_assert_eq!(alg.multiply(&a, &inv), alg.one());
        }

        #[test]
        fn x_commutation(seed in any::<u64>()) {
            let alg = builtin();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let beta = random_l(&alg, &mut rng);
            let lhs = alg.multiply(&alg.x(), &alg.from_l(&beta));
            let rhs = alg.multiply(&alg.from_l(&alg.ext().tau_apply(&beta)), &alg.x());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
