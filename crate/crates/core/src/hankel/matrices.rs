use num_complex::{Complex, Complex64};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::invariant::norm_weights;
use crate::linalg::Mat;
use crate::scalar::{cratio, Real};
use crate::series::PowerSeries;

/// How an [`OperatorMatrix`] was built.
#[derive(Clone, Debug, PartialEq)]
pub enum OperatorKind {
    Classical,
    Generalized { m: f64, n: f64 },
    LinearizedSchwarzian,
    LoopBlock,
    HalfFormAction,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<R: Real> {
    pub matrix: Mat<R>,
    pub kind: OperatorKind,
}

/// Finite Hankel matrix `H[i][j] = x_{i+j+1}` (0-based) with zero fill past
/// `x_n`. Row reversal of this layout gives the other common convention;
/// singular values are unaffected.
pub fn hankel_classical<R: Real>(x: &PowerSeries<R>, n: usize) -> OperatorMatrix<R> {
    let matrix = Mat::from_fn(n, n, |i, j| {
        let k = i + j + 1;
        if k <= n && k <= x.order() {
            x.coeff(k).clone()
        } else {
            Complex::zero()
        }
    });
    OperatorMatrix {
        matrix,
        kind: OperatorKind::Classical,
    }
}

/// Matrix of `B(m, n; F)` in orthonormal bases:
/// `F_{j+k} w_{m+n}(j+k) / sqrt(w_m(j) w_n(k))`, rows `j`, columns `k`.
///
/// Coefficients of `F` beyond its order are taken to be zero.
pub fn hankel_generalized<R: Real>(
    f: &PowerSeries<R>,
    m: &R,
    n: &R,
    nrows: usize,
    ncols: usize,
) -> Result<OperatorMatrix<R>> {
    let top = (nrows + ncols).max(1);
    let wm = norm_weights(m, top)?;
    let wn = norm_weights(n, top)?;
    let wmn = norm_weights(&(m.clone() + n.clone()), top)?;
    let mut matrix = Mat::zeros(nrows, ncols);
    for j in 0..nrows {
        for k in 0..ncols {
            let idx = j + k;
            if idx > f.order() || f.coeff(idx).is_zero() {
                continue;
            }
            let denom = (wm[j].clone() * wn[k].clone())
                .sqrt_opt()
                .ok_or(Error::NotRepresentable("sqrt of weight product"))?;
            let scale = wmn[idx].clone() / denom;
            matrix[(j, k)] = f.coeff(idx).clone() * Complex::new(scale, R::zero());
        }
    }
    Ok(OperatorMatrix {
        matrix,
        kind: OperatorKind::Generalized {
            m: m.to_f64(),
            n: n.to_f64(),
        },
    })
}

/// Infinitesimal action of `v = Σ_{j≥2} v_j z^{j+1} ∂_z` on half-forms,
/// restricted to the block sending `z^{-k}(dz)^{1/2}` (columns, `k ≥ 1`) to
/// `z^i (dz)^{1/2}` (rows, `i ≥ 0`). Entry `(i, k)` is `½(i-k+1) v_{i+k}`.
///
/// `v` is indexed so that `v.coeff(j)` is `v_j`; `v_0` and `v_1` are ignored.
pub fn linearized_schwarzian_matrix<R: Real>(
    v: &PowerSeries<R>,
    nrows: usize,
    ncols: usize,
) -> OperatorMatrix<R> {
    let matrix = Mat::from_fn(nrows, ncols, |i, c| {
        let k = c + 1;
        let j = i + k;
        if j < 2 || j > v.order() {
            return Complex::zero();
        }
        v.coeff(j).clone() * cratio::<R>(i as i64 - k as i64 + 1, 2)
    });
    OperatorMatrix {
        matrix,
        kind: OperatorKind::LinearizedSchwarzian,
    }
}

/// `det(1 + B B*)` through a Cholesky factorisation.
pub fn det_invariant(b: &Mat<f64>) -> f64 {
    b.log_det_one_plus_gram().exp()
}

/// `log det(1 + B B*)`.
pub fn log_det_invariant(b: &Mat<f64>) -> f64 {
    b.log_det_one_plus_gram()
}

/// `det(1 + B B*)` by elimination, exact for rational entries.
pub fn det_invariant_exact<R: Real>(b: &Mat<R>) -> R {
    let g = &Mat::identity(b.rows()) + &(b * &b.adjoint());
    g.det().re
}

/// `|x_1|^2 + (1 + |x_2|^2)^2`, the `N = 2` value of `det(1 + B B*)`.
pub fn det_invariant_n2(x1: Complex64, x2: Complex64) -> f64 {
    let a = 1.0 + x2.norm_sqr();
    x1.norm_sqr() + a * a
}
