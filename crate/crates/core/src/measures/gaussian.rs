use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::invariant::{covariance_matrix, norm_weights, Differential, KernelSpec};
use crate::linalg::Mat;
use crate::rng::RngStream;
use crate::series::PowerSeries;

/// Which space a Gaussian lives on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Degree {
    /// `H^m` with the invariant weights `w_m(n)`, `m > 0`.
    Weight(f64),
    /// `H^0 = C`, constants only, with the standard complex Gaussian.
    Constant,
    /// `H^0/C` realised by antiderivatives `x = Σ_{n≥1} x_n z^n` with norm
    /// `Σ n |x_n|^2`.
    Antiderivative,
}

impl Degree {
    /// Degree of the differentials produced (`0` for both `m = 0` modes).
    pub fn value(&self) -> f64 {
        match self {
            Degree::Weight(m) => *m,
            _ => 0.0,
        }
    }

    /// Norm weights for coefficients `0..=order`.
    pub fn weights(&self, order: usize) -> Result<Vec<f64>> {
        match self {
            Degree::Weight(m) => norm_weights(m, order),
            Degree::Constant => {
                let mut w = vec![0.0; order + 1];
                w[0] = 1.0;
                Ok(w)
            }
            Degree::Antiderivative => Ok((0..=order).map(|n| n as f64).collect()),
        }
    }

    /// Inner product `Σ f_n conj(g_n) w(n)` with this degree's weights.
    pub fn inner(&self, f: &PowerSeries<f64>, g: &PowerSeries<f64>) -> Result<Complex64> {
        let n = f.order().min(g.order());
        let w = self.weights(n)?;
        Ok((0..=n)
            .map(|k| f.coeff(k) * g.coeff(k).conj() * w[k])
            .sum())
    }
}

/// The Gaussian `ν_T` with density proportional to `exp(-|θ|^2 / (2T))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianSpec {
    pub degree: Degree,
    pub t: f64,
}

impl GaussianSpec {
    pub fn new(degree: Degree, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::InvalidParameter(format!("temperature must be positive, got {t}")));
        }
        if let Degree::Weight(m) = degree {
            if !(m > 0.0) {
                return Err(Error::InvalidParameter(format!("degree must be positive, got {m}")));
            }
        }
        Ok(GaussianSpec { degree, t })
    }

    pub fn weighted(m: f64, t: f64) -> Result<Self> {
        Self::new(Degree::Weight(m), t)
    }

    /// Standard deviations `a_n = sqrt(T / w(n))` (zero where the weight is).
    pub fn amplitudes(&self, order: usize) -> Result<Vec<f64>> {
        Ok(self
            .degree
            .weights(order)?
            .into_iter()
            .map(|w| if w > 0.0 { (self.t / w).sqrt() } else { 0.0 })
            .collect())
    }
}

/// `f_n = a_n Z_n` with `E|Z_n|^2 = 2`.
pub fn sample_gaussian(spec: &GaussianSpec, order: usize, rng: &mut RngStream) -> Result<Differential<f64>> {
    let amps = spec.amplitudes(order)?;
    let coeffs = amps
        .iter()
        .map(|&a| {
            let z = rng.complex_normal();
            z * a
        })
        .collect();
    Ok(Differential::new(spec.degree.value(), PowerSeries::new(coeffs)))
}

/// Density of `(f(z_1), ..., f(z_n))` under `spec`: a centred complex
/// Gaussian with `E[f(z_i) conj f(z_j)] = 2T conj(C_ij)`, normalised to
/// total mass one.
pub fn gaussian_npoint_density(
    spec: &GaussianSpec,
    points: &[Complex64],
    values: &[Complex64],
) -> Result<f64> {
    if points.len() != values.len() {
        return Err(Error::InvalidParameter("points and values differ in length".into()));
    }
    let n = points.len();
    let c = match spec.degree {
        Degree::Weight(m) => covariance_matrix(&KernelSpec {
            points: points.to_vec(),
            degree: m,
        })?,
        Degree::Antiderivative => covariance_matrix(&KernelSpec {
            points: points.to_vec(),
            degree: 0.0,
        })?,
        Degree::Constant => Mat::from_fn(n, n, |_, _| Complex64::new(1.0, 0.0)),
    };
    let sigma = c.transpose().scale(&Complex64::new(2.0 * spec.t, 0.0));
    let det = sigma.det().re;
    if !(det > 0.0) || det < 1e-300 {
        return Err(Error::CoincidentPoints);
    }
    let inv = sigma.inverse().map_err(|_| Error::CoincidentPoints)?;
    let v = Mat::from_row_major(n, 1, values.to_vec());
    let q = (&(&v.adjoint() * &inv) * &v)[(0, 0)].re;
    Ok((-q).exp() / (PI.powi(n as i32) * det))
}
