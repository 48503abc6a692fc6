//! Dense LU factorization with partial pivoting over a small scalar trait.

use std::fmt::Debug;
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::dd::DoubleDouble;

pub trait Scalar:
    Copy
    + Send
    + Sync
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Any norm-like size used to choose pivots.
    fn magnitude(&self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.re.abs() + self.im.abs()
    }
}

impl Scalar for DoubleDouble {
    fn zero() -> Self {
        DoubleDouble::ZERO
    }
    fn one() -> Self {
        DoubleDouble::ONE
    }
    fn magnitude(&self) -> f64 {
        self.hi().abs()
    }
}

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    /// Builds a matrix from `n` rows of length `n`.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "row length mismatch");
            data.extend(r);
        }
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

/// `P A = L U` with unit lower `L`.
///
/// With a leading size `lead > 0` the pivot search for the first `lead`
/// columns is confined to the first `lead` rows. The first `lead` pivots then
/// factor the leading principal block on its own and the remaining pivots
/// factor its Schur complement, so both determinants come out of a single
/// factorization.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    n: usize,
    lead: usize,
    lu: Vec<T>,
    perm: Vec<usize>,
    lead_swaps: usize,
    rest_swaps: usize,
    singular: bool,
}

impl<T: Scalar> Lu<T> {
    pub fn factor(a: Matrix<T>) -> Self {
        Self::factor_leading(a, 0)
    }

    pub fn factor_leading(a: Matrix<T>, lead: usize) -> Self {
        let n = a.n;
        assert!(lead <= n);
        let mut lu = a.data;
        let mut perm: Vec<usize> = (0..n).collect();
        let (mut lead_swaps, mut rest_swaps) = (0, 0);
        let mut singular = false;
        for k in 0..n {
            let hi = if k < lead { lead } else { n };
            let mut p = k;
            let mut best = lu[k * n + k].magnitude();
            for i in k + 1..hi {
                let v = lu[i * n + k].magnitude();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if !(best > 0.0) || !best.is_finite() {
                singular = true;
                break;
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                if k < lead {
                    lead_swaps += 1;
                } else {
                    rest_swaps += 1;
                }
            }
            let (top, bottom) = lu.split_at_mut((k + 1) * n);
            let pivot_row = &top[k * n..];
            let pivot = pivot_row[k];
            for row in bottom.chunks_exact_mut(n) {
                let l = row[k] / pivot;
                row[k] = l;
                if l.magnitude() == 0.0 {
                    continue;
                }
                for (r, &u) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    *r = *r - l * u;
                }
            }
        }
        Lu {
            n,
            lead,
            lu,
            perm,
            lead_swaps,
            rest_swaps,
            singular,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    fn pivot_product(&self, lo: usize, hi: usize, swaps: usize) -> T {
        if self.singular {
            return T::zero();
        }
        let mut d = T::one();
        for k in lo..hi {
            d = d * self.lu[k * self.n + k];
        }
        if swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    pub fn det(&self) -> T {
        if self.singular {
            return T::zero();
        }
        self.pivot_product(0, self.n, self.lead_swaps + self.rest_swaps)
    }

    /// Determinant of the leading `lead x lead` block.
    pub fn det_leading(&self) -> T {
        self.pivot_product(0, self.lead, self.lead_swaps)
    }

    /// Determinant of the Schur complement of the leading block.
    pub fn det_schur(&self) -> T {
        self.pivot_product(self.lead, self.n, self.rest_swaps)
    }

    /// Solves `A x = b` in place. Returns `false` if the matrix is singular.
    pub fn solve_in_place(&self, b: &mut [T]) -> bool {
        if self.singular {
            return false;
        }
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let mut s = x[i];
            for (l, xj) in row.iter().zip(&x[..i]) {
                s = s - *l * *xj;
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n..(i + 1) * n];
            let mut s = x[i];
            for j in i + 1..n {
                s = s - row[j] * x[j];
            }
            x[i] = s / row[i];
        }
        b.copy_from_slice(&x);
        true
    }
}

/// Determinant by LU with partial pivoting. The flag is `true` when the
/// matrix is singular to working precision, in which case the value is 0.
pub fn determinant<T: Scalar>(a: Matrix<T>) -> (T, bool) {
    let lu = Lu::factor(a);
    (lu.det(), lu.is_singular())
}
