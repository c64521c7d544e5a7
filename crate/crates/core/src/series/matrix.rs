use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{cint, Real};

/// Power series whose coefficients are `d x d` complex matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSeries<R: Real> {
    dim: usize,
    coeffs: Vec<Mat<R>>,
}

impl<R: Real> MatrixSeries<R> {
    pub fn new(coeffs: Vec<Mat<R>>) -> Result<Self> {
        let dim = coeffs.first().map(|m| m.rows()).ok_or_else(|| {
            Error::InvalidParameter("matrix series needs at least one coefficient".into())
        })?;
        if dim == 0 || coeffs.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidParameter(
                "matrix series coefficients must share a square dimension".into(),
            ));
        }
        Ok(MatrixSeries { dim, coeffs })
    }

    pub fn zero(dim: usize, order: usize) -> Self {
        MatrixSeries {
            dim,
            coeffs: vec![Mat::zeros(dim, dim); order + 1],
        }
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        let mut s = Self::zero(dim, order);
        s.coeffs[0] = Mat::identity(dim);
        s
    }

    /// `1 + g_1 z + ... + g_N z^N` from the list `[g_1, ..., g_N]`.
    pub fn unipotent(tail: Vec<Mat<R>>) -> Result<Self> {
        let dim = tail.first().map(|m| m.rows()).unwrap_or(1);
        let mut coeffs = vec![Mat::identity(dim)];
        coeffs.extend(tail);
        Self::new(coeffs)
    }

    /// Scalar series viewed as `1 x 1` matrices.
    pub fn from_scalar(s: &crate::series::PowerSeries<R>) -> Self {
        MatrixSeries {
            dim: 1,
            coeffs: s
                .coeffs()
                .iter()
                .map(|c| Mat::from_row_major(1, 1, vec![c.clone()]))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Mat<R> {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Mat<R>] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        MatrixSeries {
            dim: self.dim,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn pad_to(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Mat::zeros(self.dim, self.dim));
        coeffs.truncate(order + 1);
        MatrixSeries {
            dim: self.dim,
            coeffs,
        }
    }

    pub fn antideriv(&self) -> Self {
        let mut coeffs = vec![Mat::zeros(self.dim, self.dim)];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&(Complex::new(R::one(), R::zero()) / cint::<R>(k as i64 + 1))));
        }
        MatrixSeries {
            dim: self.dim,
            coeffs,
        }
    }

    /// Inverse by the recursion `H_0 = G_0^{-1}`, `H_n = -G_0^{-1} Σ_{k≥1} G_k H_{n-k}`.
    pub fn inverse(&self) -> Result<Self> {
        let h0 = self.coeffs[0].inverse()?;
        let mut h = vec![h0.clone()];
        for n in 1..=self.order() {
            let mut acc = Mat::zeros(self.dim, self.dim);
            for k in 1..=n {
                acc = &acc + &(&self.coeffs[k] * &h[n - k]);
            }
            h.push((&h0 * &acc).scale(&-cint::<R>(1)));
        }
        Ok(MatrixSeries {
            dim: self.dim,
            coeffs: h,
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.order().min(other.order());
        (0..=n)
            .map(|k| self.coeffs[k].max_abs_diff(&other.coeffs[k]))
            .fold(0.0, f64::max)
    }
}

impl<R: Real> Mul for &MatrixSeries<R> {
    type Output = MatrixSeries<R>;

    fn mul(self, rhs: &MatrixSeries<R>) -> MatrixSeries<R> {
        assert_eq!(self.dim, rhs.dim, "matrix series dimension mismatch");
        let n = self.order().min(rhs.order());
        let mut out = MatrixSeries::zero(self.dim, n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        out
    }
}

impl<R: Real> Add for &MatrixSeries<R> {
    type Output = MatrixSeries<R>;

    fn add(self, rhs: &MatrixSeries<R>) -> MatrixSeries<R> {
        let n = self.order().min(rhs.order());
        MatrixSeries {
            dim: self.dim,
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl<R: Real> Sub for &MatrixSeries<R> {
    type Output = MatrixSeries<R>;

    fn sub(self, rhs: &MatrixSeries<R>) -> MatrixSeries<R> {
        let n = self.order().min(rhs.order());
        MatrixSeries {
            dim: self.dim,
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}
