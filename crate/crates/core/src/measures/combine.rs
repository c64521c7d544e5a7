use num_complex::Complex64;

use super::gaussian::{sample_gaussian, Degree, GaussianSpec};
use super::mixture::sample_mu_l;
use crate::error::{Error, Result};
use crate::hankel::DetMeasureSpec;
use crate::invariant::Differential;
use crate::rng::RngStream;

/// Retry cap for quotient denominators with vanishing constant term.
pub const QUOTIENT_RETRIES: usize = 100;
const DENOMINATOR_FLOOR: f64 = 1e-12;

/// Description of a measure built from Gaussians by the standard operations.
#[derive(Clone, Debug, PartialEq)]
pub enum MeasureSpec {
    Gaussian(GaussianSpec),
    MixtureMu { l: f64 },
    DetHankel(DetMeasureSpec),
    Product(Box<MeasureSpec>, Box<MeasureSpec>),
    Convolution(Box<MeasureSpec>, Box<MeasureSpec>),
    Scaled(Box<MeasureSpec>, Complex64),
    Quotient(Box<MeasureSpec>, Box<MeasureSpec>),
}

impl MeasureSpec {
    pub fn gaussian(m: f64, t: f64) -> Result<Self> {
        Ok(MeasureSpec::Gaussian(GaussianSpec::weighted(m, t)?))
    }

    pub fn product(a: MeasureSpec, b: MeasureSpec) -> Result<Self> {
        if a.degree() <= 0.0 || b.degree() <= 0.0 {
            return Err(Error::InvalidParameter(
                "product factors need positive degrees".into(),
            ));
        }
        Ok(MeasureSpec::Product(Box::new(a), Box::new(b)))
    }

    pub fn convolution(a: MeasureSpec, b: MeasureSpec) -> Result<Self> {
        if a.degree() != b.degree() {
            return Err(Error::DegreeMismatch(a.degree(), b.degree()));
        }
        Ok(MeasureSpec::Convolution(Box::new(a), Box::new(b)))
    }

    pub fn quotient(a: MeasureSpec, b: MeasureSpec) -> Self {
        MeasureSpec::Quotient(Box::new(a), Box::new(b))
    }

    pub fn scaled(a: MeasureSpec, c: Complex64) -> Result<Self> {
        if c.norm() == 0.0 {
            return Err(Error::InvalidParameter("scale factor must be nonzero".into()));
        }
        Ok(MeasureSpec::Scaled(Box::new(a), c))
    }

    /// Degree of the differentials the measure lives on.
    pub fn degree(&self) -> f64 {
        match self {
            MeasureSpec::Gaussian(g) => g.degree.value(),
            MeasureSpec::MixtureMu { .. } => 1.0,
            MeasureSpec::DetHankel(_) => 0.0,
            MeasureSpec::Product(a, b) => a.degree() + b.degree(),
            MeasureSpec::Convolution(a, _) | MeasureSpec::Scaled(a, _) => a.degree(),
            MeasureSpec::Quotient(a, b) => a.degree() - b.degree(),
        }
    }
}

/// One draw of `spec` truncated at `order`.
///
/// Determinantal measures are not directly sampleable; use
/// [`crate::hankel::mcmc_sample_det`] for those.
pub fn combine_sample(spec: &MeasureSpec, order: usize, rng: &mut RngStream) -> Result<Differential<f64>> {
    match spec {
        MeasureSpec::Gaussian(g) => sample_gaussian(g, order, rng),
        MeasureSpec::MixtureMu { l } => sample_mu_l(*l, order, rng),
        MeasureSpec::DetHankel(_) => Err(Error::Unsupported(
            "determinantal measures are sampled by MCMC chains".into(),
        )),
        MeasureSpec::Scaled(a, c) => {
            let f = combine_sample(a, order, rng)?;
            Ok(Differential::new(f.degree, f.coeffs.scale(c)))
        }
        MeasureSpec::Convolution(a, b) => {
            let f = combine_sample(a, order, rng)?;
            let g = combine_sample(b, order, rng)?;
            Ok(Differential::new(f.degree, &f.coeffs + &g.coeffs))
        }
        MeasureSpec::Product(a, b) => {
            let f = combine_sample(a, order, rng)?;
            let g = combine_sample(b, order, rng)?;
            Ok(Differential::new(f.degree + g.degree, &f.coeffs * &g.coeffs))
        }
        MeasureSpec::Quotient(a, b) => {
            let f = combine_sample(a, order, rng)?;
            for _ in 0..QUOTIENT_RETRIES {
                let g = combine_sample(b, order, rng)?;
                if g.coeffs.coeff(0).norm() >= DENOMINATOR_FLOOR {
                    return Ok(Differential::new(f.degree - g.degree, f.coeffs.div(&g.coeffs)?));
                }
            }
            Err(Error::DegenerateDenominator(QUOTIENT_RETRIES))
        }
    }
}

/// Samples `q = f(0)/g(0)` from `ν_T^{(m)} / ν_T^{(m-1)}` (the `m = 1`
/// denominator is the constant Gaussian on `C`) and returns the KS statistic
/// of `u = |q|^2/(1+|q|^2)` against `Uniform(0,1)`, together with the phases
/// of `q`.
pub fn quotient_onepoint_stat(
    m: u32,
    t: f64,
    nsamples: usize,
    rng: &mut RngStream,
) -> Result<(f64, Vec<f64>)> {
    if m < 1 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let num = MeasureSpec::gaussian(m as f64, t)?;
    let den = if m == 1 {
        MeasureSpec::Gaussian(GaussianSpec::new(Degree::Constant, t)?)
    } else {
        MeasureSpec::gaussian((m - 1) as f64, t)?
    };
    let spec = MeasureSpec::quotient(num, den);
    let mut us = Vec::with_capacity(nsamples);
    let mut phases = Vec::with_capacity(nsamples);
    for _ in 0..nsamples {
        let q = *combine_sample(&spec, 0, rng)?.coeffs.coeff(0);
        let a = q.norm_sqr();
        us.push(a / (1.0 + a));
        phases.push(q.arg());
    }
    Ok((crate::stats::ks_statistic(&us, |u| u.clamp(0.0, 1.0)), phases))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_bookkeeping() {
        let a = MeasureSpec::gaussian(1.0, 1.0).unwrap();
        let b = MeasureSpec::gaussian(0.5, 2.0).unwrap();
        assert_eq!(MeasureSpec::product(a.clone(), b.clone()).unwrap().degree(), 1.5);
        assert_eq!(MeasureSpec::quotient(a.clone(), b.clone()).degree(), 0.5);
        assert!(MeasureSpec::convolution(a, b).is_err());
    }

    #[test]
    fn degenerate_denominator() {
        let zero = MeasureSpec::Scaled(
            Box::new(MeasureSpec::gaussian(1.0, 1.0).unwrap()),
            Complex64::new(0.0, 0.0),
        );
        let q = MeasureSpec::quotient(MeasureSpec::gaussian(1.0, 1.0).unwrap(), zero);
        assert_eq!(
            combine_sample(&q, 3, &mut RngStream::new(0, 0)),
            Err(Error::DegenerateDenominator(QUOTIENT_RETRIES))
        );
    }
}
