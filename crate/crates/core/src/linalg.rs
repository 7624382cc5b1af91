//! Exact dense linear algebra over commutative rings and fields.
//!
//! Two determinant routes are provided on purpose: fraction-free Gaussian
//! elimination over a field (any size), and cofactor expansion over a plain
//! commutative ring (small sizes only, no division). The torus ring has zero
//! divisors, so it must take the cofactor route; the 3x3 boundary matrix is
//! the only client.

use std::fmt;

use crate::cyclo::{CycloElem, Rational, TorusPoly};
use num_traits::{One, Zero};

/// Element of an exact commutative ring. `zero_like`/`one_like` take the
/// receiver as context so that conductor-carrying elements can mint
/// constants of the right field.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;
}

/// Scalar with exact division by nonzero elements.
pub trait FieldScalar: Scalar {
    /// Multiplicative inverse of a nonzero element.
    fn field_inv(&self) -> Self;

    fn field_div(&self, rhs: &Self) -> Self {
        self.ring_mul(&rhs.field_inv())
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_neg(&self) -> Self {
        -self
    }
}

impl FieldScalar for Rational {
    fn field_inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

impl Scalar for CycloElem {
    fn zero_like(&self) -> Self {
        CycloElem::zero(self.conductor())
    }
    fn one_like(&self) -> Self {
        CycloElem::one(self.conductor())
    }
    fn is_zero(&self) -> bool {
        CycloElem::is_zero(self)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("conductor mismatch")
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("conductor mismatch")
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("conductor mismatch")
    }
    fn ring_neg(&self) -> Self {
        self.negated()
    }
}

impl FieldScalar for CycloElem {
    fn field_inv(&self) -> Self {
        self.inv().expect("inverse of zero")
    }
}

impl Scalar for TorusPoly {
    fn zero_like(&self) -> Self {
        TorusPoly::zero(self.modulus())
    }
    fn one_like(&self) -> Self {
        TorusPoly::one(self.modulus())
    }
    fn is_zero(&self) -> bool {
        TorusPoly::is_zero(self)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("modulus mismatch")
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("modulus mismatch")
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("modulus mismatch")
    }
    fn ring_neg(&self) -> Self {
        self.negated()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    NotSquare {
        rows: usize,
        cols: usize,
    },
    /// Cofactor expansion is restricted to small sizes over a non-field ring.
    CofactorSizeUnsupported {
        size: usize,
        max: usize,
    },
    DimensionMismatch,
    EmptyMatrix,
    RaggedRows,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, not square")
            }
            LinalgError::CofactorSizeUnsupported { size, max } => {
                write!(f, "cofactor determinant supports n <= {max}, got {size}")
            }
            LinalgError::DimensionMismatch => write!(f, "dimension mismatch"),
            LinalgError::EmptyMatrix => write!(f, "matrix must have positive dimensions"),
            LinalgError::RaggedRows => write!(f, "rows have unequal lengths"),
        }
    }
}

impl std::error::Error for LinalgError {}

/// Dense matrix over an exact ring, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> ExactMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(LinalgError::EmptyMatrix);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::RaggedRows);
        }
        let r = rows.len();
        Ok(ExactMatrix {
            rows: r,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must have positive dimensions");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// n-by-n identity; `sample` supplies the ring context.
    pub fn identity(n: usize, sample: &T) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                sample.one_like()
            } else {
                sample.zero_like()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.entry(j, i).clone())
    }

    /// Entrywise image under a ring map (e.g. evaluation of torus polynomials).
    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch);
        }
        let zero = self.entries[0].zero_like();
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                acc = acc.ring_add(&self.entry(i, k).ring_mul(rhs.entry(k, j)));
            }
            acc
        }))
    }

    /// Determinant by cofactor expansion along the first row. Division-free,
    /// so valid over any commutative ring, but restricted to n <= 4.
    pub fn det_cofactor(&self) -> Result<T, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows > 4 {
            return Err(LinalgError::CofactorSizeUnsupported {
                size: self.rows,
                max: 4,
            });
        }
        Ok(self.det_cofactor_inner(&(0..self.rows).collect::<Vec<_>>()))
    }

    fn det_cofactor_inner(&self, cols: &[usize]) -> T {
        let row = self.rows - cols.len();
        if cols.len() == 1 {
            return self.entry(row, cols[0]).clone();
        }
        let mut acc = self.entries[0].zero_like();
        for (k, &c) in cols.iter().enumerate() {
            let a = self.entry(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = self.det_cofactor_inner(&rest);
            let term = a.ring_mul(&minor);
            acc = if k % 2 == 0 {
                acc.ring_add(&term)
            } else {
                acc.ring_sub(&term)
            };
        }
        acc
    }
}

impl<T: FieldScalar> ExactMatrix<T> {
    /// Determinant by fraction-free (Bareiss) elimination with pivoting on
    /// the first nonzero entry. Every division is exact.
    pub fn det(&self) -> Result<T, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m: Vec<Vec<T>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let zero = self.entries[0].zero_like();
        let one = self.entries[0].one_like();
        let mut sign_flip = false;
        let mut prev = one;
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(zero),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k][k]
                        .ring_mul(&m[i][j])
                        .ring_sub(&m[i][k].ring_mul(&m[k][j]));
                    m[i][j] = num.field_div(&prev);
                }
                m[i][k] = zero.clone();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if sign_flip { d.ring_neg() } else { d })
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    fn rref(&self) -> (Vec<Vec<T>>, Vec<usize>) {
        let mut m: Vec<Vec<T>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, pr);
            let inv = m[r][c].field_inv();
            for j in c..self.cols {
                m[r][j] = m[r][j].ring_mul(&inv);
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let factor = m[i][c].clone();
                    for j in c..self.cols {
                        let sub = factor.ring_mul(&m[r][j]);
                        m[i][j] = m[i][j].ring_sub(&sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel in the deterministic normal form: each free
    /// column, in ascending order, is set to one and the pivot coordinates
    /// are read off the reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let (m, pivots) = self.rref();
        let zero = self.entries[0].zero_like();
        let one = self.entries[0].one_like();
        let mut basis = Vec::new();
        for c in 0..self.cols {
            if pivots.contains(&c) {
                continue;
            }
            let mut v = vec![zero.clone(); self.cols];
            v[c] = one.clone();
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = m[pr][c].ring_neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Left-multiply a column vector: m * v.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch);
        }
        let zero = self.entries[0].zero_like();
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = zero.clone();
                for j in 0..self.cols {
                    acc = acc.ring_add(&self.entry(i, j).ring_mul(&v[j]));
                }
                acc
            })
            .collect())
    }
}
