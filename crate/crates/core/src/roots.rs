//! Certified real root isolation over the rationals.
//!
//! Roots are isolated with Sturm sequences and refined by bisection. Signs of
//! polynomials at an isolated root come from rational interval evaluation;
//! no floating point is involved.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::{self, rational_sign, sign_variations};
use crate::ring::Rationals;
use crate::Rational;

/// Closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Integers inside the interval, as `ceil(lo)..=floor(hi)`.
    pub fn integer_range(&self) -> (BigInt, BigInt) {
        (self.lo.ceil().to_integer(), self.hi.floor().to_integer())
    }

    /// Sign of every point of the interval, if it is constant.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }
}

/// Enclosure of `p` over `x` by interval Horner evaluation.
pub fn eval_interval(p: &[Rational], x: &Interval) -> Interval {
    p.iter().rev().fold(Interval::point(Rational::zero()), |acc, c| {
        acc.mul(x).add(&Interval::point(c.clone()))
    })
}

pub fn sturm_sequence(f: &[Rational]) -> Vec<Vec<Rational>> {
    let mut seq = vec![f.to_vec(), poly::derivative(&Rationals, f)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let r = poly::rem(&Rationals, &seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(poly::neg(&Rationals, &r));
    }
    seq
}

fn variations_at(seq: &[Vec<Rational>], x: &Rational) -> usize {
    sign_variations(
        seq.iter()
            .map(|p| rational_sign(&poly::eval(&Rationals, p, x))),
    )
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn count_roots(seq: &[Vec<Rational>], a: &Rational, b: &Rational) -> usize {
    variations_at(seq, a).saturating_sub(variations_at(seq, b))
}

/// Cauchy bound: every root satisfies `|x| < bound`.
pub fn root_bound(f: &[Rational]) -> Rational {
    let lead = f.last().expect("nonzero polynomial").abs();
    let max = f[..f.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    (max + Rational::one()).ceil()
}

/// Isolating intervals for the real roots of a squarefree polynomial, in
/// ascending order. Each interval either is a single rational root or has
/// endpoints where `f` is nonzero with opposite signs.
pub fn isolate_real_roots(f: &[Rational]) -> Vec<Interval> {
    let f = poly::trim(&Rationals, f.to_vec());
    match poly::degree(&f) {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![Interval::point(-&f[0] / &f[1])],
        _ => {}
    }
    let seq = sturm_sequence(&f);
    let bound = root_bound(&f);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        let n = count_roots(&seq, &a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            if poly::eval(&Rationals, &f, &b).is_zero() {
                out.push(Interval::point(b));
            } else {
                out.push(Interval::new(a, b));
            }
            continue;
        }
        let mid = (&a + &b) / Rational::from_integer(2.into());
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// One bisection step on an isolating interval of `f`.
pub fn bisect(f: &[Rational], iso: &Interval) -> Interval {
    if iso.lo == iso.hi {
        return iso.clone();
    }
    let mid = iso.midpoint();
    let fm = rational_sign(&poly::eval(&Rationals, f, &mid));
    if fm == 0 {
        return Interval::point(mid);
    }
    let flo = rational_sign(&poly::eval(&Rationals, f, &iso.lo));
    if fm == flo {
        Interval::new(mid, iso.hi.clone())
    } else {
        Interval::new(iso.lo.clone(), mid)
    }
}

/// Bisects until the width is at most `width`.
pub fn refine_to(f: &[Rational], iso: &Interval, width: &Rational) -> Interval {
    let mut cur = iso.clone();
    while &cur.width() > width {
        cur = bisect(f, &cur);
    }
    cur
}

/// Certified sign of `p` at the unique root of `f` inside `iso`.
///
/// The caller guarantees `p` does not vanish at that root (otherwise this
/// would not terminate); zero is only reported for the zero polynomial or an
/// exact rational root.
pub fn sign_at_root(f: &[Rational], iso: &Interval, p: &[Rational]) -> i8 {
    if p.is_empty() {
        return 0;
    }
    let mut cur = iso.clone();
    loop {
        if let Some(s) = eval_interval(p, &cur).sign() {
            return s;
        }
        cur = bisect(f, &cur);
    }
}

/// Irreducibility of a monic integer polynomial whose roots are all real and
/// isolated by `isolators`.
///
/// A monic factor over the integers is `∏ (x - ρ_i)` over some subset of the
/// roots. For each subset of size at most half the degree, the coefficients
/// of that product are enclosed by interval arithmetic; once every enclosure
/// holds at most one integer, the unique candidate is checked by exact
/// division.
pub fn is_irreducible_totally_real(f: &[Rational], isolators: &[Interval]) -> bool {
    let deg = isolators.len();
    if deg <= 1 {
        return true;
    }
    let mut isos = isolators.to_vec();
    for size in 1..=deg / 2 {
        for subset in subsets(deg, size) {
            loop {
                let coeffs = subset_product(&subset, &isos);
                let mut candidate = Vec::with_capacity(coeffs.len());
                let mut excluded = false;
                let mut too_wide = false;
                for c in &coeffs {
                    let (lo, hi) = c.integer_range();
                    if lo > hi {
                        excluded = true;
                        break;
                    }
                    if lo != hi {
                        too_wide = true;
                    }
                    candidate.push(lo);
                }
                if excluded {
                    break;
                }
                if too_wide {
                    isos = isos.iter().map(|iso| bisect(f, iso)).collect();
                    continue;
                }
                let g = poly::from_ints(&candidate);
                if poly::rem(&Rationals, f, &g).is_empty() {
                    return false;
                }
                break;
            }
        }
    }
    true
}

fn subset_product(subset: &[usize], isos: &[Interval]) -> Vec<Interval> {
    let mut coeffs = vec![Interval::point(Rational::one())];
    for &i in subset {
        let neg_root = isos[i].neg();
        let mut next = vec![Interval::point(Rational::zero()); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k] = next[k].add(&c.mul(&neg_root));
            next[k + 1] = next[k + 1].add(c);
        }
        coeffs = next;
    }
    coeffs
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Squarefree test: `gcd(f, f') = 1`.
pub fn is_squarefree(f: &[Rational]) -> bool {
    let g = poly::gcd(&Rationals, f, &poly::derivative(&Rationals, f));
    g.len() == 1
}

/// `2^-bits`.
pub fn dyadic(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits)
}

/// `true` if `n` is a perfect square (n >= 0).
pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Exact rational square root when one exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    if is_square(n) && is_square(d) {
        Some(Rational::new(n.sqrt(), d.sqrt()))
    } else {
        None
    }
}

/// Exact rational cube root when one exists.
pub fn rational_cbrt(q: &Rational) -> Option<Rational> {
    let root = |n: &BigInt| {
        let r = n.cbrt();
        (&r * &r * &r == *n).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}
