//! Dense complex matrices over any [`Real`], plus floating-point spectral
//! routines backed by nalgebra.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{conj, norm_sqr, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<R: Real> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<R>>,
}

impl<R: Real> Mat<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<R>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Row-major construction; panics if `data.len() != rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex<R>>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data has wrong length");
        Mat { rows, cols, data }
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

    pub fn entries(&self) -> &[Complex<R>] {
        &self.data
    }

    pub fn scale(&self, c: &Complex<R>) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| conj(&self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(row0 + i, col0 + j)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Squared Hilbert-Schmidt (Frobenius) norm.
    pub fn hs_norm_sqr(&self) -> R {
        self.data
            .iter()
            .fold(R::zero(), |acc, x| acc + norm_sqr(x))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| norm_sqr(&(a.clone() - b.clone())).to_f64().sqrt())
            .fold(0.0, f64::max)
    }

    pub fn map<S: Real>(&self, f: impl Fn(&Complex<R>) -> Complex<S>) -> Mat<S> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Gauss-Jordan inverse with partial pivoting on `|a|^2`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::InvalidParameter("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = pivot_row(&a, col).ok_or(Error::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = Complex::<R>::one() / a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() * p.clone();
                inv[(col, j)] = inv[(col, j)].clone() * p.clone();
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..n {
                    let t = a[(col, j)].clone() * f.clone();
                    a[(i, j)] = a[(i, j)].clone() - t;
                    let t = inv[(col, j)].clone() * f.clone();
                    inv[(i, j)] = inv[(i, j)].clone() - t;
                }
            }
        }
        Ok(inv)
    }

    /// Determinant by Gaussian elimination; exact for rational entries.
    pub fn det(&self) -> Complex<R> {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Complex::<R>::one();
        for col in 0..n {
            let Some(pivot) = pivot_row(&a, col) else {
                return Complex::zero();
            };
            if pivot != col {
                a.swap_rows(col, pivot);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det = det * p.clone();
            for i in col + 1..n {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone() / p.clone();
                for j in col..n {
                    let t = a[(col, j)].clone() * f.clone();
                    a[(i, j)] = a[(i, j)].clone() - t;
                }
            }
        }
        det
    }

    /// Solves `self * X = rhs`.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        Ok(&self.inverse()? * rhs)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

fn pivot_row<R: Real>(a: &Mat<R>, col: usize) -> Option<usize> {
    if R::is_exact() {
        (col..a.rows).find(|&i| !a[(i, col)].is_zero())
    } else {
        let (best, mag) = (col..a.rows)
            .map(|i| (i, norm_sqr(&a[(i, col)]).to_f64()))
            .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        (mag > 0.0).then_some(best)
    }
}

impl<R: Real> Index<(usize, usize)> for Mat<R> {
    type Output = Complex<R>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<R> {
        &self.data[i * self.cols + j]
    }
}

impl<R: Real> IndexMut<(usize, usize)> for Mat<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<R> {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Real> Mul for &Mat<R> {
    type Output = Mat<R>;

    fn mul(self, rhs: &Mat<R>) -> Mat<R> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + t;
                }
            }
        }
        out
    }
}

impl<R: Real> Add for &Mat<R> {
    type Output = Mat<R>;

    fn add(self, rhs: &Mat<R>) -> Mat<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<R: Real> Sub for &Mat<R> {
    type Output = Mat<R>;

    fn sub(self, rhs: &Mat<R>) -> Mat<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

// Floating-point spectral helpers.

impl Mat<f64> {
    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        if self.rows == 0 || self.cols == 0 {
            return Vec::new();
        }
        let mut s: Vec<f64> = self.to_nalgebra().singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let m = self.to_nalgebra();
        let herm = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    /// Eigenvalues of a general complex matrix (Schur form diagonal).
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        let schur = nalgebra::linalg::Schur::try_new(self.to_nalgebra(), f64::EPSILON, 10_000)
            .ok_or(Error::Singular)?;
        let (_, t) = schur.unpack();
        Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
    }

    /// `log det(1 + A A*)` via Cholesky of the Hermitian positive definite
    /// matrix `1 + A A*`.
    pub fn log_det_one_plus_gram(&self) -> f64 {
        let a = self.to_nalgebra();
        let g = DMatrix::<Complex64>::identity(self.rows, self.rows) + &a * a.adjoint();
        match g.clone().cholesky() {
            Some(ch) => 2.0 * ch.l().diagonal().iter().map(|d| d.re.ln()).sum::<f64>(),
            None => g.determinant().re.ln(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cint, qc};
    use num_rational::BigRational;

    #[test]
    fn exact_inverse_roundtrip() {
        let m: Mat<BigRational> = Mat::from_row_major(
            2,
            2,
            vec![qc((1, 1), (0, 1)), qc((2, 1), (1, 1)), qc((0, 1), (1, 1)), qc((3, 1), (0, 1))],
        );
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
    }

    #[test]
    fn det_of_singular_is_zero() {
        let m: Mat<BigRational> =
            Mat::from_row_major(2, 2, vec![cint(1), cint(2), cint(2), cint(4)]);
        assert!(m.det().is_zero());
        assert_eq!(m.inverse(), Err(Error::Singular));
    }

    #[test]
    fn float_eigenvalues_of_triangular() {
        let m = Mat::<f64>::from_row_major(
            2,
            2,
            vec![
                Complex64::new(1.0, 1.0),
                Complex64::new(5.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-2.0, 0.5),
            ],
        );
        let mut ev = m.eigenvalues().unwrap();
        ev.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((ev[0] - Complex64::new(-2.0, 0.5)).norm() < 1e-12);
        assert!((ev[1] - Complex64::new(1.0, 1.0)).norm() < 1e-12);
    }
}
