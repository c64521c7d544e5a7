//! Finite point configurations in the disk: Poisson samples and zero sets.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::invariant::{hyperbolic_area, Differential};
use crate::linalg::Mat;
use crate::rng::RngStream;

#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    pub points: Vec<Complex64>,
}

impl Configuration {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points whose hyperbolic distance from the origin lies in `[r0, r1)`.
    pub fn count_in_annulus(&self, r0: f64, r1: f64) -> usize {
        self.points
            .iter()
            .filter(|z| {
                let d = z.norm().atanh();
                d >= r0 && d < r1
            })
            .count()
    }
}

/// Poisson process of intensity `λ` (against `dA = dx dy/(1-|z|^2)^2`)
/// restricted to the hyperbolic disk of radius `radius` about the origin.
pub fn poisson_sample(lambda: f64, radius: f64, rng: &mut RngStream) -> Result<Configuration> {
    if !(lambda > 0.0 && radius > 0.0) {
        return Err(Error::InvalidParameter("λ and R must be positive".into()));
    }
    let mean = lambda * hyperbolic_area(radius);
    let count = Poisson::new(mean)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?
        .sample(rng) as usize;
    let rho = radius.tanh();
    let cap = rho * rho / (1.0 - rho * rho);
    let points = (0..count)
        .map(|_| {
            // area inside Euclidean radius r is π r^2/(1-r^2)
            let s = rng.uniform() * cap;
            let r = (s / (1.0 + s)).sqrt();
            Complex64::from_polar(r, 2.0 * PI * rng.uniform())
        })
        .collect();
    Ok(Configuration { points })
}

/// Roots of the truncated polynomial with modulus below `r`.
///
/// Coefficients smaller than `1e-15` times the largest are dropped from the
/// top before forming the companion matrix; they cannot move roots inside
/// the disk beyond rounding but would wreck its conditioning. Each root gets
/// one Newton step on the full polynomial.
pub fn zeros(theta: &Differential<f64>, r: f64) -> Result<Configuration> {
    let c = theta.coeffs.coeffs();
    let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let deg = c
        .iter()
        .rposition(|z| z.norm() > 1e-15 * scale)
        .expect("nonzero polynomial");
    if deg == 0 {
        return Ok(Configuration { points: vec![] });
    }
    let lead = c[deg];
    let companion = Mat::from_fn(deg, deg, |i, j| {
        if i == 0 {
            -c[deg - 1 - j] / lead
        } else if j + 1 == i {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let roots = companion.eigenvalues()?;
    let poly = &theta.coeffs;
    let dpoly = poly.deriv();
    let points = roots
        .into_iter()
        .map(|z| {
            let d = dpoly.eval(&z);
            if d.norm() > 0.0 {
                z - poly.eval(&z) / d
            } else {
                z
            }
        })
        .filter(|z| z.norm() < r)
        .collect();
    Ok(Configuration { points })
}

/// `ρ(r) = -ln(1 - r^2)`.
fn rho(r: f64) -> f64 {
    -(-r * r).ln_1p()
}

/// Growth envelope `sqrt(ρ(r) ln(ρ(√r)/(1-r)))`.
pub fn growth_envelope(r: f64) -> f64 {
    (rho(r) * (rho(r.sqrt()) / (1.0 - r)).ln()).sqrt()
}

/// Ratios `|x(r e^{iα})| / sqrt(ρ(r) ln(ρ(√r)/(1-r)))` for the given radii.
///
/// Radii must lie where the logarithm is positive (`r` above roughly 0.433)
/// and satisfy the truncation heuristic `N >= 10/(1-r)`.
pub fn radial_growth(x: &Differential<f64>, alpha: f64, radii: &[f64]) -> Result<Vec<f64>> {
    let n = x.order() as f64;
    radii
        .iter()
        .map(|&r| {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::OutsideDisk(r));
            }
            if n < 10.0 / (1.0 - r) {
                return Err(Error::InvalidParameter(format!(
                    "truncation {n} too small for radius {r}: need N >= 10/(1-r)"
                )));
            }
            let arg = rho(r.sqrt()) / (1.0 - r);
            if arg <= 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "growth envelope undefined at radius {r}"
                )));
            }
            let z = Complex64::from_polar(r, alpha);
            Ok(x.coeffs.eval(&z).norm() / growth_envelope(r))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::PowerSeries;

    #[test]
    fn constructed_roots() {
        let a = Complex64::new(0.3, 0.0);
        let b = Complex64::new(0.0, 0.5);
        let p = PowerSeries::new(vec![a * b, -(a + b), Complex64::new(1.0, 0.0)]);
        let z = zeros(&Differential::new(1.0, p), 1.0).unwrap();
        assert_eq!(z.len(), 2);
        for target in [a, b] {
            assert!(z.points.iter().any(|w| (w - target).norm() < 1e-10));
        }
    }

    #[test]
    fn zero_polynomial_rejected() {
        let th = Differential::new(1.0, PowerSeries::zero(4));
        assert_eq!(zeros(&th, 1.0), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn empty_radial_profile_for_zero() {
        let x = Differential::new(0.0, PowerSeries::zero(2000));
        let prof = radial_growth(&x, 0.3, &[0.5, 0.9, 0.99]).unwrap();
        assert!(prof.iter().all(|&v| v == 0.0));
        assert!(radial_growth(&x, 0.0, &[0.2]).is_err());
    }
}
