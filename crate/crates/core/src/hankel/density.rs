use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use super::partition::{critical_exponent, log_det_from_coeffs, partition_closed_form};
use crate::error::{Error, Result};

/// Finite-`N` determinantal measure with density proportional to
/// `det(1 + B_N B_N*)^{-(1 + p_N + l)}` in the coordinates `x_1..x_N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetMeasureSpec {
    pub n: usize,
    pub l: f64,
}

impl DetMeasureSpec {
    pub fn new(n: usize, l: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("N must be at least 1".into()));
        }
        if l <= -1.0 {
            return Err(Error::InvalidParameter(format!("l must exceed -1, got {l}")));
        }
        Ok(DetMeasureSpec { n, l })
    }

    pub fn p_n(&self) -> f64 {
        critical_exponent(self.n)
    }

    pub fn exponent(&self) -> f64 {
        1.0 + self.p_n() + self.l
    }

    pub fn log_normalizer(&self) -> f64 {
        -partition_closed_form(self.exponent(), self.n)
            .expect("exponent exceeds p_N when l > -1")
            .ln()
    }

    /// Unnormalised log density.
    pub fn log_unnormalized(&self, x: &[Complex64]) -> f64 {
        -self.exponent() * log_det_from_coeffs(x)
    }
}

/// Normalised density of the determinantal measure at `x = (x_1..x_N)`.
pub fn det_density(x: &[Complex64], spec: &DetMeasureSpec) -> Result<f64> {
    if x.len() != spec.n {
        return Err(Error::OrderMismatch(x.len(), spec.n));
    }
    Ok((spec.log_normalizer() + spec.log_unnormalized(x)).exp())
}

/// Radial density `Γ(N+l+1)/(π^N Γ(l+1)) (1 + |y|^2)^{-(1+N+l)}` with respect
/// to Lebesgue measure in orthonormal coordinates `y` of the invariant norm.
pub fn radial_density(y_norm_sqr: f64, n: usize, l: f64) -> Result<f64> {
    if l <= -1.0 {
        return Err(Error::InvalidParameter(format!("l must exceed -1, got {l}")));
    }
    let nf = n as f64;
    let log_z = ln_gamma(nf + l + 1.0) - nf * PI.ln() - ln_gamma(l + 1.0);
    Ok((log_z - (1.0 + nf + l) * y_norm_sqr.ln_1p()).exp())
}

/// Tail `P(|x_1| > t)` for `N = 1`, exponent `p`: `(1 + t^2)^{-(p-1)}`.
pub fn tail_n1(t: f64, p: f64) -> f64 {
    (1.0 + t * t).powf(-(p - 1.0))
}

/// CDF of `|x_1|` under the `N = 2` measure with exponent `p`, obtained by
/// integrating out `R = |x_2|^2`, whose law is `(2p-3)(1+R)^{-(2p-2)} dR`:
/// `P(|x_1| <= t) = 1 - E_R[(1 + t^2/(1+R)^2)^{-(p-1)}]`.
pub fn cdf_abs_x1_n2(t: f64, p: f64) -> f64 {
    // R = u/(1-u) maps (0,1) onto (0, ∞); dR = du/(1-u)^2 and 1 + R = 1/(1-u).
    let integrand = |u: f64| {
        if u >= 1.0 {
            return 0.0;
        }
        let v = 1.0 - u;
        let dens = (2.0 * p - 3.0) * v.powf(2.0 * p - 4.0);
        dens * (1.0 + t * t * v * v).powf(-(p - 1.0))
    };
    let tail = quadrature::integrate(integrand, 0.0, 1.0, 1e-12).integral;
    (1.0 - tail).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_density_closed_form() {
        for l in [0.0, 1.0, 2.5] {
            let spec = DetMeasureSpec::new(1, l).unwrap();
            let x = [Complex64::new(0.3, -1.1)];
            let expect = (l + 1.0) / PI * (1.0 + x[0].norm_sqr()).powf(-(2.0 + l));
            assert!((det_density(&x, &spec).unwrap() / expect - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn radial_density_at_origin() {
        let (n, l) = (3, 0.5);
        let expect = (ln_gamma(n as f64 + l + 1.0) - ln_gamma(l + 1.0)).exp() / PI.powi(3);
        assert!((radial_density(0.0, n, l).unwrap() / expect - 1.0).abs() < 1e-13);
    }

    #[test]
    fn n2_cdf_limits() {
        let p = 2.5;
        assert!(cdf_abs_x1_n2(0.0, p) < 1e-12);
        assert!(cdf_abs_x1_n2(1e6, p) > 1.0 - 1e-6);
    }
}
