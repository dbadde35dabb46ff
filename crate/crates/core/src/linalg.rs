//! Dense matrices over a [`Ring`] context.

use crate::error::{Error, Result};
use crate::ring::{Conjugation, Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).map(<[T]>::to_vec).collect()
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
}

pub fn zeros<R: Ring>(ring: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(rows, cols, |_, _| ring.zero())
}

pub fn diag<R: Ring>(ring: &R, entries: &[R::Elem]) -> Matrix<R::Elem> {
    let n = entries.len();
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            entries[i].clone()
        } else {
            ring.zero()
        }
    })
}

pub fn is_diagonal<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || ring.is_zero(m.get(i, j))))
}

pub fn mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product dimension mismatch");
    Matrix::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = ring.zero();
        for k in 0..a.cols {
            let x = a.get(i, k);
            if ring.is_zero(x) {
                continue;
            }
            let y = b.get(k, j);
            if ring.is_zero(y) {
                continue;
            }
            acc = ring.add(&acc, &ring.mul(x, y));
        }
        acc
    })
}

pub fn add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix::from_fn(a.rows, a.cols, |i, j| ring.add(a.get(i, j), b.get(i, j)))
}

pub fn sub<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix::from_fn(a.rows, a.cols, |i, j| ring.sub(a.get(i, j), b.get(i, j)))
}

pub fn scale<R: Ring>(ring: &R, a: &Matrix<R::Elem>, c: &R::Elem) -> Matrix<R::Elem> {
    a.map(|x| ring.mul(x, c))
}

/// Conjugate transpose `Aᴴ`.
pub fn adjoint<R: Conjugation>(ring: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    Matrix::from_fn(a.cols, a.rows, |i, j| ring.conj(a.get(j, i)))
}

/// `Aᴴ·H·A`.
pub fn congruence<R: Conjugation>(
    ring: &R,
    h: &Matrix<R::Elem>,
    a: &Matrix<R::Elem>,
) -> Matrix<R::Elem> {
    mul(ring, &adjoint(ring, a), &mul(ring, h, a))
}

pub fn block_diag<R: Ring>(ring: &R, blocks: &[&Matrix<R::Elem>]) -> Matrix<R::Elem> {
    let n: usize = blocks.iter().map(|b| b.rows).sum();
    let m: usize = blocks.iter().map(|b| b.cols).sum();
    let mut out = zeros(ring, n, m);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
        r0 += b.rows;
        c0 += b.cols;
    }
    out
}

/// Determinant by Gaussian elimination over a field.
pub fn det<F: Field>(field: &F, a: &Matrix<F::Elem>) -> F::Elem {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows;
    let mut m = a.to_rows();
    let mut acc = field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !field.is_zero(&m[r][col])) else {
            return field.zero();
        };
        if p != col {
            m.swap(p, col);
            acc = field.neg(&acc);
        }
        let pivot = m[col][col].clone();
        acc = field.mul(&acc, &pivot);
        let pinv = field.inv(&pivot).expect("nonzero pivot");
        for r in col + 1..n {
            if field.is_zero(&m[r][col]) {
                continue;
            }
            let factor = field.mul(&m[r][col], &pinv);
            for c in col..n {
                let v = field.sub(&m[r][c], &field.mul(&factor, &m[col][c]));
                m[r][c] = v;
            }
        }
    }
    acc
}

/// Inverse by Gauss–Jordan elimination.
pub fn inverse<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let n = a.rows;
    let mut m = a.to_rows();
    let mut inv = identity(field, n).to_rows();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !field.is_zero(&m[r][col]))
            .ok_or(Error::Singular)?;
        m.swap(p, col);
        inv.swap(p, col);
        let pinv = field.inv(&m[col][col]).expect("nonzero pivot");
        for c in 0..n {
            m[col][c] = field.mul(&m[col][c], &pinv);
            inv[col][c] = field.mul(&inv[col][c], &pinv);
        }
        for r in 0..n {
            if r == col || field.is_zero(&m[r][col]) {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..n {
                m[r][c] = field.sub(&m[r][c], &field.mul(&factor, &m[col][c]));
                inv[r][c] = field.sub(&inv[r][c], &field.mul(&factor, &inv[col][c]));
            }
        }
    }
    Matrix::from_rows(inv)
}

/// Characteristic polynomial `det(xI − A)`, constant term first, by the
/// Faddeev–LeVerrier recursion (characteristic zero).
pub fn char_poly<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Vec<F::Elem> {
    assert!(a.is_square());
    let n = a.rows;
    let mut coeffs = vec![field.zero(); n + 1];
    coeffs[n] = field.one();
    // M_0 = 0, c_n = 1; M_k = A·M_{k-1} + c_{n-k+1}·I; c_{n-k} = -tr(A·M_k)/k
    let mut m = zeros(field, n, n);
    let id = identity(field, n);
    for k in 1..=n {
        m = add(field, &mul(field, a, &m), &scale(field, &id, &coeffs[n - k + 1]));
        let am = mul(field, a, &m);
        let tr = (0..n).fold(field.zero(), |acc, i| field.add(&acc, am.get(i, i)));
        let k_inv = field.inv(&field.from_int(k as i64)).expect("characteristic zero");
        coeffs[n - k] = field.neg(&field.mul(&tr, &k_inv));
    }
    coeffs
}

pub fn is_identity<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    a.is_square() && *a == identity(ring, a.rows)
}
