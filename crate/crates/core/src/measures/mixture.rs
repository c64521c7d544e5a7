//! The measures `μ_l`: Gamma mixtures of Gaussians on `H^1`.
//!
//! In orthonormal coordinates `y` the finite-dimensional marginal has density
//! `Γ(n+l+1)/(π^n Γ(l+1)) (1 + |y|^2)^{-(1+n+l)}`, which is the mixture of
//! `(β/π)^n e^{-β|y|^2}` over `β ~ Gamma(l+1, 1)`. Since `ν_T` has density
//! proportional to `e^{-|y|^2/(2T)}`, the mixing temperature is `T = 1/(2β)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand_distr::{Distribution, Gamma};
use statrs::function::gamma::ln_gamma;

use super::gaussian::{sample_gaussian, GaussianSpec};
use crate::error::{Error, Result};
use crate::hankel::radial_density;
use crate::invariant::Differential;
use crate::rng::RngStream;

fn check_l(l: f64) -> Result<()> {
    if l > -1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("l must exceed -1, got {l}")))
    }
}

/// One draw of `μ_l` on `H^1`, truncated at `order` (so `order + 1`
/// coefficients `θ_1..θ_{order+1}` stored as `f_0..f_order`).
pub fn sample_mu_l(l: f64, order: usize, rng: &mut RngStream) -> Result<Differential<f64>> {
    check_l(l)?;
    let gamma = Gamma::new(l + 1.0, 1.0).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let beta: f64 = gamma.sample(rng);
    let spec = GaussianSpec::weighted(1.0, 1.0 / (2.0 * beta))?;
    sample_gaussian(&spec, order, rng)
}

/// Closed-form density of the projection of `μ_l` at `θ`, in orthonormal
/// coordinates.
pub fn mu_l_density(theta: &Differential<f64>, l: f64) -> Result<f64> {
    let n = theta.order() + 1;
    radial_density(theta.norm_sqr()?, n, l)
}

/// `∫_0^∞ g(β) dβ` for smooth `g` decaying at least like `e^{-β}`,
/// via `β = u/(1-u)`.
pub(crate) fn integrate_half_line(g: impl Fn(f64) -> f64, tol: f64) -> f64 {
    quadrature::integrate(
        |u: f64| {
            if u <= 0.0 || u >= 1.0 {
                return 0.0;
            }
            let v = 1.0 - u;
            g(u / v) / (v * v)
        },
        0.0,
        1.0,
        tol,
    )
    .integral
}

/// The same density obtained by integrating the Gaussian densities
/// `(β/π)^n e^{-β|y|^2}` against `β^l e^{-β}/Γ(l+1) dβ` numerically.
pub fn mu_l_density_by_quadrature(theta: &Differential<f64>, l: f64) -> Result<f64> {
    check_l(l)?;
    let n = (theta.order() + 1) as f64;
    let r2 = theta.norm_sqr()?;
    let lg = ln_gamma(l + 1.0);
    // scale out the peak so the absolute tolerance acts relatively
    let peak = radial_density(r2, theta.order() + 1, l)?;
    let val = integrate_half_line(
        |beta| {
            if beta <= 0.0 {
                return 0.0;
            }
            let log = n * (beta / PI).ln() - beta * r2 + l * beta.ln() - beta - lg;
            log.exp() / peak
        },
        1e-13,
    );
    Ok(val * peak)
}

/// Fourier transform of `μ_l` at `F` with `|F|^2 = norm_sqr`:
/// `∫ exp(-|F|^2/(4β)) β^l e^{-β}/Γ(l+1) dβ`.
pub fn mu_l_fourier(norm_sqr: f64, l: f64) -> Result<f64> {
    check_l(l)?;
    if norm_sqr == 0.0 {
        return Ok(1.0);
    }
    let lg = ln_gamma(l + 1.0);
    Ok(integrate_half_line(
        |beta| {
            if beta <= 0.0 {
                return 0.0;
            }
            (-norm_sqr / (4.0 * beta) + l * beta.ln() - beta - lg).exp()
        },
        1e-14,
    ))
}

/// Characteristic function of `Re f_0` under `μ_l` (degree 1):
/// `E exp(i t Re f_0) = E_β exp(-t^2/(4β))`.
pub fn mu_l_re_f0_cf(t: f64, l: f64) -> Result<f64> {
    mu_l_fourier(t * t, l)
}

/// Kolmogorov distance between `Re f_0` of the scaled `n`-fold convolution
/// `n^{-1/2}(θ^{(1)} + ... + θ^{(n)})` of `μ_l` and its Gaussian limit
/// `N(0, 1/(2l))`, by Gil-Pelaez inversion of the characteristic functions
/// on a grid of `x` values. Needs `l > 0` for a finite variance.
pub fn clt_ks_distance(l: f64, n: usize) -> Result<f64> {
    if !(l > 0.0) {
        return Err(Error::InvalidParameter("the Gaussian limit needs l > 0".into()));
    }
    let var = 1.0 / (2.0 * l);
    let sd = var.sqrt();
    let nf = n as f64;
    let diff_cf = |t: f64| -> f64 {
        let phi = mu_l_re_f0_cf(t / nf.sqrt(), l).unwrap_or(0.0).powf(nf);
        phi - (-0.5 * var * t * t).exp()
    };
    // tabulate the CF difference once; it decays exponentially in t
    let t_max = 60.0 / sd;
    let steps = 6000;
    let h = t_max / steps as f64;
    let table: Vec<f64> = (0..=steps).map(|i| diff_cf(i as f64 * h)).collect();
    let mut worst: f64 = 0.0;
    for j in 1..=120 {
        let x = j as f64 * 4.0 * sd / 120.0;
        // F_n(x) - Φ(x) = (1/π) ∫_0^∞ sin(tx) Δφ(t) / t dt, Simpson's rule
        let g = |i: usize| {
            let t = i as f64 * h;
            if i == 0 {
                x * table[0]
            } else {
                (t * x).sin() * table[i] / t
            }
        };
        let mut s = g(0) + g(steps);
        for i in 1..steps {
            s += g(i) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        worst = worst.max((s * h / 3.0 / PI).abs());
    }
    Ok(worst)
}

/// CDF of `|y|^2` for the `n`-coefficient projection of `μ_l`: the ratio of
/// `Gamma(n)` and `Gamma(l+1)` variables, so `|y|^2/(1+|y|^2) ~ Beta(n, l+1)`.
pub fn mu_l_norm_cdf(s: f64, n: usize, l: f64) -> Result<f64> {
    check_l(l)?;
    if n == 0 {
        return Err(Error::InvalidParameter("projection needs n >= 1".into()));
    }
    if s <= 0.0 {
        return Ok(0.0);
    }
    Ok(statrs::function::beta::beta_reg(n as f64, l + 1.0, s / (1.0 + s)))
}

/// Complex-valued helper for estimators: `Re f_0` from a sample.
pub fn re_f0(theta: &Differential<f64>) -> f64 {
    let c: Complex64 = *theta.coeffs.coeff(0);
    c.re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::PowerSeries;

    #[test]
    fn fourier_at_zero_is_one() {
        assert_eq!(mu_l_fourier(0.0, 0.5).unwrap(), 1.0);
    }

    #[test]
    fn fourier_l0_closed_form() {
        // l = 0: ∫ e^{-a/β - β} dβ = 2 sqrt(a) K_1(2 sqrt(a)); at a = 1/4
        // (|F| = 1) this is K_1(1) = 0.6019072301972346.
        let v = mu_l_fourier(1.0, 0.0).unwrap();
        assert!((v - 0.601_907_230_197_234_6).abs() < 1e-10, "{v}");
    }

    #[test]
    fn density_matches_quadrature_at_origin() {
        let theta = Differential::new(1.0, PowerSeries::zero(2));
        let a = mu_l_density(&theta, 0.7).unwrap();
        let b = mu_l_density_by_quadrature(&theta, 0.7).unwrap();
        assert!((a / b - 1.0).abs() < 1e-9);
    }
}
