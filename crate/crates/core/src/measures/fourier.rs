//! Fourier transforms `ν̂(F) = ∫ exp(-i Re<F, f>) dν(f)`.

use num_complex::Complex64;

use super::combine::{combine_sample, MeasureSpec};
use super::gaussian::Degree;
use super::mixture::mu_l_fourier;
use crate::error::{Error, Result};
use crate::hankel::hankel_generalized;
use crate::rng::RngStream;
use crate::series::PowerSeries;
use crate::stats::complex_mean_stderr;

/// Weights of the invariant pairing used by `spec`.
fn pairing(spec: &MeasureSpec) -> Result<Degree> {
    match spec {
        MeasureSpec::Gaussian(g) => Ok(g.degree),
        MeasureSpec::MixtureMu { .. } => Ok(Degree::Weight(1.0)),
        MeasureSpec::DetHankel(_) => Ok(Degree::Antiderivative),
        other => {
            let m = other.degree();
            if m > 0.0 {
                Ok(Degree::Weight(m))
            } else {
                Err(Error::Unsupported(format!(
                    "no invariant pairing for degree {m}"
                )))
            }
        }
    }
}

/// Closed-form transform for Gaussians, products of two weighted Gaussians
/// and the mixtures `μ_l`.
///
/// * Gaussian `ν_T`: `exp(-T |F|^2 / 2)`.
/// * `ν_S^{(m)} ⊗ ν_T^{(n)}` pushed forward by multiplication:
///   `1 / det(1 + S T B B*)` with `B = B(m, n; F)` truncated to the order of `F`.
/// * `μ_l`: `∫ exp(-|F|^2/(4β)) β^l e^{-β}/Γ(l+1) dβ`.
pub fn ft_closed_form(spec: &MeasureSpec, f: &PowerSeries<f64>) -> Result<Complex64> {
    match spec {
        MeasureSpec::Gaussian(g) => {
            let n2 = g.degree.inner(f, f)?.re;
            Ok(Complex64::new((-0.5 * g.t * n2).exp(), 0.0))
        }
        MeasureSpec::MixtureMu { l } => {
            let n2 = Degree::Weight(1.0).inner(f, f)?.re;
            Ok(Complex64::new(mu_l_fourier(n2, *l)?, 0.0))
        }
        MeasureSpec::Product(a, b) => match (a.as_ref(), b.as_ref()) {
            (MeasureSpec::Gaussian(ga), MeasureSpec::Gaussian(gb)) => {
                let (Degree::Weight(m), Degree::Weight(n)) = (ga.degree, gb.degree) else {
                    return Err(Error::Unsupported("product of unweighted Gaussians".into()));
                };
                let k = f.order() + 1;
                let b = hankel_generalized(f, &m, &n, k, k)?;
                let st = ga.t * gb.t;
                let bb = b.matrix.scale(&Complex64::new(st.sqrt(), 0.0));
                Ok(Complex64::new((-bb.log_det_one_plus_gram()).exp(), 0.0))
            }
            _ => Err(Error::Unsupported("closed form only for products of Gaussians".into())),
        },
        other => Err(Error::Unsupported(format!("no closed-form transform for {other:?}"))),
    }
}

/// Monte Carlo estimate of `ν̂(F)` and its standard error.
pub fn ft_estimate(
    spec: &MeasureSpec,
    f: &PowerSeries<f64>,
    nsamples: usize,
    rng: &mut RngStream,
) -> Result<(Complex64, f64)> {
    if f.is_zero() {
        return Ok((Complex64::new(1.0, 0.0), 0.0));
    }
    let weights = pairing(spec)?;
    let order = f.order();
    let mut vals = Vec::with_capacity(nsamples);
    for _ in 0..nsamples {
        let s = combine_sample(spec, order, rng)?;
        let re = weights.inner(f, &s.coeffs)?.re;
        vals.push(Complex64::new(0.0, -re).exp());
    }
    Ok(complex_mean_stderr(&vals))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_coefficient_gaussian() {
        let spec = MeasureSpec::gaussian(1.0, 1.0).unwrap();
        let v = ft_closed_form(&spec, &PowerSeries::one(0)).unwrap();
        assert!((v.re - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn zero_argument_gives_one() {
        let f = PowerSeries::zero(3);
        let specs = [
            MeasureSpec::gaussian(1.0, 2.0).unwrap(),
            MeasureSpec::MixtureMu { l: 0.5 },
            MeasureSpec::product(
                MeasureSpec::gaussian(1.0, 1.0).unwrap(),
                MeasureSpec::gaussian(0.5, 1.0).unwrap(),
            )
            .unwrap(),
        ];
        for s in &specs {
            assert!((ft_closed_form(s, &f).unwrap() - 1.0).norm() < 1e-15);
            let (e, se) = ft_estimate(s, &f, 10, &mut RngStream::new(0, 0)).unwrap();
            assert_eq!((e, se), (Complex64::new(1.0, 0.0), 0.0));
        }
    }
}
