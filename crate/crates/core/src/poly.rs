//! Dense univariate polynomials, stored constant term first.
//!
//! The functions are generic over a [`Ring`] context. A polynomial is trimmed
//! when its last coefficient is nonzero; the zero polynomial is the empty
//! vector.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ring::{Field, Rationals, Ring};
use crate::Rational;

pub fn trim<R: Ring>(ring: &R, mut p: Vec<R::Elem>) -> Vec<R::Elem> {
    while p.last().is_some_and(|c| ring.is_zero(c)) {
        p.pop();
    }
    p
}

/// Degree of a trimmed polynomial; `None` for zero.
pub fn degree<T>(p: &[T]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => ring.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(ring, out)
}

pub fn neg<R: Ring>(ring: &R, a: &[R::Elem]) -> Vec<R::Elem> {
    a.iter().map(|c| ring.neg(c)).collect()
}

pub fn sub<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    add(ring, a, &neg(ring, b))
}

pub fn mul<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    trim(ring, out)
}

pub fn scale<R: Ring>(ring: &R, a: &[R::Elem], c: &R::Elem) -> Vec<R::Elem> {
    trim(ring, a.iter().map(|x| ring.mul(x, c)).collect())
}

pub fn eval<R: Ring>(ring: &R, p: &[R::Elem], x: &R::Elem) -> R::Elem {
    p.iter()
        .rev()
        .fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c))
}

/// Composition `p(q(x))`.
pub fn compose<R: Ring>(ring: &R, p: &[R::Elem], q: &[R::Elem]) -> Vec<R::Elem> {
    p.iter().rev().fold(Vec::new(), |acc, c| {
        add(ring, &mul(ring, &acc, q), std::slice::from_ref(c))
    })
}

pub fn derivative<R: Ring>(ring: &R, p: &[R::Elem]) -> Vec<R::Elem> {
    let out = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ring.mul(c, &ring.from_int(i as i64)))
        .collect();
    trim(ring, out)
}

/// Euclidean division; panics on division by the zero polynomial.
pub fn div_rem<F: Field>(
    field: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = field.inv(&b[db]).expect("trimmed polynomial has nonzero lead");
    let mut rem = trim(field, a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![field.zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let dr = rem.len() - 1;
        let c = field.mul(&rem[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] = field.sub(&rem[shift + i], &field.mul(&c, bc));
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(field, rem);
    }
    (trim(field, quot), rem)
}

pub fn rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    div_rem(field, a, b).1
}

pub fn monic<F: Field>(field: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    match p.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = field.inv(lead).expect("nonzero lead");
            scale(field, p, &inv)
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trim(field, a.to_vec());
    let mut y = trim(field, b.to_vec());
    while !y.is_empty() {
        let r = rem(field, &x, &y);
        x = y;
        y = r;
    }
    monic(field, &x)
}

/// Returns `(g, s)` with `s * a ≡ g (mod m)` and `g = gcd(a, m)` monic.
pub fn inverse_mod<F: Field>(
    field: &F,
    a: &[F::Elem],
    m: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let (mut r0, mut r1) = (trim(field, m.to_vec()), rem(field, a, m));
    let (mut s0, mut s1): (Vec<F::Elem>, Vec<F::Elem>) = (Vec::new(), vec![field.one()]);
    while !r1.is_empty() {
        let (q, r) = div_rem(field, &r0, &r1);
        let s = sub(field, &s0, &mul(field, &q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    match r0.last() {
        None => (Vec::new(), Vec::new()),
        Some(lead) => {
            let inv = field.inv(lead).expect("nonzero lead");
            (scale(field, &r0, &inv), scale(field, &s0, &inv))
        }
    }
}

/// Rational polynomial from integer coefficients.
pub fn from_ints(coeffs: &[BigInt]) -> Vec<Rational> {
    trim(
        &Rationals,
        coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect(),
    )
}

pub fn from_i64s(coeffs: &[i64]) -> Vec<Rational> {
    trim(
        &Rationals,
        coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(),
    )
}

/// Number of sign changes in a sequence, zeros skipped.
pub fn sign_variations<I: IntoIterator<Item = i8>>(signs: I) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

pub fn rational_sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Integer polynomial division used by the cyclotomic construction; `b` must
/// be monic and divide `a` exactly.
pub fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(db)];
    for shift in (0..quot.len()).rev() {
        let c = rem[shift + db].clone();
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
        quot[shift] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact integer division");
    quot
}
