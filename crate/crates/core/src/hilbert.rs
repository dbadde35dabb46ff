//! Hilbert symbols over `Q`, used to decide whether a rational is a norm
//! from an imaginary quadratic field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// A place of `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(BigInt),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "infinity"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Prime factorisation of `|n|` by trial division.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Squarefree integer in the square class of a nonzero rational.
pub fn squarefree_class(q: &Rational) -> BigInt {
    let n = q.numer() * q.denom();
    let mut out = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    for (p, e) in factor(&n) {
        if e % 2 == 1 {
            out *= p;
        }
    }
    out
}

fn legendre(a: &BigInt, p: &BigInt) -> i8 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) / 2u32;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Splits `a = p^v · u` with `p ∤ u`.
fn split_valuation(a: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut u = a.clone();
    let mut v = 0;
    while (&u % p).is_zero() {
        u /= p;
        v += 1;
    }
    (v, u)
}

/// Hilbert symbol `(a, b)_v` for nonzero integers.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, place: &Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    match place {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) if *p == BigInt::from(2) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let eps = |x: &BigInt| ((x - 1i32) / 2i32).mod_floor(&BigInt::from(2)).to_u32().unwrap();
            let omega = |x: &BigInt| ((x * x - 1i32) / 8i32).mod_floor(&BigInt::from(2)).to_u32().unwrap();
            let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let eps_p = ((p - 1i32) / 2i32).mod_floor(&BigInt::from(2)).to_u32().unwrap();
            let mut s: i8 = if (alpha * beta * eps_p) % 2 == 0 { 1 } else { -1 };
            if beta % 2 == 1 {
                s *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&v, p);
            }
            s
        }
    }
}

/// Places where `(a, b)_v` can be nontrivial: infinity, the odd primes
/// dividing `a·b`, and 2 (listed last).
pub fn relevant_places(a: &BigInt, b: &BigInt) -> Vec<Place> {
    let two = BigInt::from(2);
    let mut primes: Vec<BigInt> = factor(a)
        .into_iter()
        .chain(factor(b))
        .map(|(p, _)| p)
        .filter(|p| *p != two)
        .collect();
    primes.sort();
    primes.dedup();
    std::iter::once(Place::Real)
        .chain(primes.into_iter().map(Place::Prime))
        .chain(std::iter::once(Place::Prime(two)))
        .collect()
}

/// Decides whether `d` is a norm from `Q(√δ)`, i.e. whether
/// `x² − δy² = d` has a rational solution. Returns the first place where the
/// Hilbert symbol `(d, δ)_v` is `−1`, or `None` when `d` is a norm.
pub fn norm_obstruction(d: &Rational, delta: &Rational) -> Option<Place> {
    assert!(!d.is_zero() && !delta.is_zero());
    let a = squarefree_class(d);
    let b = squarefree_class(delta);
    relevant_places(&a, &b)
        .into_iter()
        .find(|v| hilbert_symbol(&a, &b, v) == -1)
}
