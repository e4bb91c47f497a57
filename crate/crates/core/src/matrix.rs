//! Dense complex matrices in the energy eigenbasis.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_real_diagonal(&vec![1.0; dim])
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `self · diag(d)`: column j scaled by d[j].
    pub fn mul_diagonal(&self, d: &[Complex64]) -> Self {
        assert_eq!(d.len(), self.dim);
        let mut out = self.clone();
        for row in out.data.chunks_exact_mut(self.dim) {
            for (x, &dj) in row.iter_mut().zip(d) {
                *x *= dj;
            }
        }
        out
    }

    pub fn mul_real_diagonal(&self, d: &[f64]) -> Self {
        let d: Vec<Complex64> = d.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.mul_diagonal(&d)
    }

    /// `diag(d) · self`: row i scaled by d[i].
    pub fn diagonal_mul(&self, d: &[Complex64]) -> Self {
        assert_eq!(d.len(), self.dim);
        let mut out = self.clone();
        for (row, &di) in out.data.chunks_exact_mut(self.dim).zip(d) {
            for x in row {
                *x *= di;
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    /// `self · v`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

/// Dimension N and guard band G of a truncated basis φ_0..φ_{N−1}.
///
/// Identities are only checked on the interior window 0..N−G.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    dim: usize,
    guard: usize,
}

pub const DEFAULT_GUARD: usize = 4;

impl Truncation {
    pub fn new(dim: usize, guard: usize) -> Result<Self> {
        if guard == 0 || dim < guard + 2 {
            return Err(Error::InvalidTruncation { dim, guard });
        }
        Ok(Self { dim, guard })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    /// Number of interior indices, N − G.
    pub fn interior(&self) -> usize {
        self.dim - self.guard
    }
}

/// A truncated operator: its matrix in the φ_n basis and the guard band.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    pub matrix: CMatrix,
    pub truncation: Truncation,
}

impl TruncatedOperator {
    pub fn new(matrix: CMatrix, truncation: Truncation) -> Self {
        assert_eq!(matrix.dim(), truncation.dim());
        Self { matrix, truncation }
    }

    pub fn dim(&self) -> usize {
        self.truncation.dim()
    }

    pub fn interior(&self) -> usize {
        self.truncation.interior()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    /// Largest |self − other| over the interior window.
    pub fn max_interior_diff(&self, other: &CMatrix) -> f64 {
        let m = self.interior();
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                worst = worst.max((self.matrix[(i, j)] - other[(i, j)]).norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_and_commutator() {
        let mut a = CMatrix::zeros(2);
        a[(0, 1)] = c(1.0, 0.0);
        let mut b = CMatrix::zeros(2);
        b[(1, 0)] = c(1.0, 0.0);
        let comm = a.commutator(&b);
        assert_eq!(comm, CMatrix::from_real_diagonal(&[1.0, -1.0]));
        assert_eq!(&CMatrix::identity(2) * &a, a);
    }

    #[test]
    fn diagonal_products_scale_columns_and_rows() {
        let mut a = CMatrix::zeros(2);
        a[(0, 0)] = c(1.0, 0.0);
        a[(0, 1)] = c(2.0, 0.0);
        a[(1, 0)] = c(3.0, 0.0);
        a[(1, 1)] = c(4.0, 0.0);
        let d = [c(10.0, 0.0), c(0.0, 1.0)];
        let right = a.mul_diagonal(&d);
        assert_eq!(right, &a * &CMatrix::from_diagonal(&d));
        let left = a.diagonal_mul(&d);
        assert_eq!(left, &CMatrix::from_diagonal(&d) * &a);
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let mut a = CMatrix::zeros(2);
        a[(0, 1)] = c(1.0, 2.0);
        assert_eq!(a.adjoint()[(1, 0)], c(1.0, -2.0));
        assert_eq!(
            a.apply(&[c(0.0, 0.0), c(1.0, 0.0)]),
            alloc::vec![c(1.0, 2.0), c(0.0, 0.0)]
        );
    }

    #[test]
    fn truncation_requires_an_interior() {
        assert!(Truncation::new(6, 4).is_ok());
        assert_eq!(
            Truncation::new(5, 4),
            Err(Error::InvalidTruncation { dim: 5, guard: 4 })
        );
        assert!(Truncation::new(10, 0).is_err());
        assert_eq!(Truncation::new(30, 4).unwrap().interior(), 26);
    }
}
