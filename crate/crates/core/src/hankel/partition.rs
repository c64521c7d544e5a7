use std::f64::consts::PI;

use num_complex::Complex64;
use rand_distr::{ChiSquared, Distribution};
use statrs::function::gamma::ln_gamma;

use super::matrices::{det_invariant, hankel_classical, hankel_generalized};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rng::RngStream;
use crate::series::PowerSeries;

/// `p_N = 2 - 1/N`.
pub fn critical_exponent(n: usize) -> f64 {
    2.0 - 1.0 / n as f64
}

/// `Z(p, N) = π^N / (N! ∏_{k=1}^N (p - (2 - 1/k)))`.
pub fn partition_closed_form(p: f64, n: usize) -> Result<f64> {
    let crit = critical_exponent(n.max(1));
    if p <= crit {
        return Err(Error::Divergent { p, critical: crit });
    }
    let mut z = 1.0;
    for k in 1..=n {
        z *= PI / (k as f64 * (p - critical_exponent(k)));
    }
    Ok(z)
}

/// Ratio `Z(p, N+1) / Z(p, N) = π / ((N+1)(p - p_{N+1}))`.
pub fn partition_recursion_factor(p: f64, n: usize) -> f64 {
    PI / ((n + 1) as f64 * (p - critical_exponent(n + 1)))
}

/// `z^N Γ(z+1) / Γ(z+N+1)` with `z = 1/(p-2)`, which equals
/// `Z(p, N) / π^N` for `p > 2`.
///
/// The Gamma ratio is evaluated as `1 / (z+1)_N`; direct evaluation of the
/// two Gamma functions loses about two digits by `N = 12`.
pub fn partition_gamma_form(p: f64, n: usize) -> f64 {
    let z = 1.0 / (p - 2.0);
    z.powi(n as i32) * gamma_ratio(z + 1.0, n)
}

/// `Γ(a) / Γ(a + n)`.
fn gamma_ratio(a: f64, n: usize) -> f64 {
    if n <= 32 {
        1.0 / (0..n).map(|k| a + k as f64).product::<f64>()
    } else {
        (ln_gamma(a) - ln_gamma(a + n as f64)).exp()
    }
}

/// Normalising constant printed with the finite-`N` limit theorem,
/// `∏_{k=1}^N (1 + (l+1)k) / π^N`. It equals `1 / Z(3 + l, N)`.
pub fn theorem_normalizer(n: usize, l: f64) -> f64 {
    (1..=n).map(|k| (1.0 + (l + 1.0) * k as f64) / PI).product()
}

/// Outcome of an importance-sampling run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub ess: f64,
    pub samples: usize,
}

/// Product proposal: each complex coordinate is a bivariate Student-t with
/// three degrees of freedom and scale `σ_k`.
#[derive(Clone, Debug)]
pub struct TProposal {
    pub scales: Vec<f64>,
    chi: ChiSquared<f64>,
}

const T_DOF: f64 = 3.0;

impl TProposal {
    pub fn new(scales: Vec<f64>) -> Self {
        TProposal {
            scales,
            chi: ChiSquared::new(T_DOF).expect("positive degrees of freedom"),
        }
    }

    /// Scales `σ_k = c / sqrt(k)`: the `k`-th coefficient enters `k` entries
    /// of the Hankel matrix, so its typical size shrinks like `k^{-1/2}`.
    pub fn for_hankel(n: usize) -> Self {
        Self::new((1..=n).map(|k| 1.2 / (k as f64).sqrt()).collect())
    }

    pub fn sample(&self, rng: &mut RngStream, out: &mut [Complex64]) -> f64 {
        let mut log_q = 0.0;
        for (x, &s) in out.iter_mut().zip(&self.scales) {
            let w: f64 = self.chi.sample(rng);
            *x = rng.complex_normal() * (s * (T_DOF / w).sqrt());
            log_q += Self::log_density_1(*x, s);
        }
        log_q
    }

    fn log_density_1(x: Complex64, s: f64) -> f64 {
        -(2.0 * PI * s * s).ln() - (T_DOF / 2.0 + 1.0) * (x.norm_sqr() / (T_DOF * s * s)).ln_1p()
    }
}

/// Importance-sampling estimate of `∫ g(x) dm(x_1..x_N)` for `g >= 0`
/// given as `log g`, under a product t(3) proposal.
pub fn importance_integral(
    log_integrand: impl Fn(&[Complex64]) -> f64,
    proposal: &TProposal,
    nsamples: usize,
    rng: &mut RngStream,
) -> Result<McEstimate> {
    let n = proposal.scales.len();
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    let (mut sum, mut sum2) = (0.0, 0.0);
    for _ in 0..nsamples {
        let log_q = proposal.sample(rng, &mut x);
        let w = (log_integrand(&x) - log_q).exp();
        sum += w;
        sum2 += w * w;
    }
    let ns = nsamples as f64;
    let mean = sum / ns;
    let var = (sum2 / ns - mean * mean).max(0.0) * ns / (ns - 1.0).max(1.0);
    let ess = if sum2 > 0.0 { sum * sum / sum2 } else { 0.0 };
    if ess < 100.0 {
        return Err(Error::LowEffectiveSampleSize(ess));
    }
    Ok(McEstimate {
        estimate: mean,
        stderr: (var / ns).sqrt(),
        ess,
        samples: nsamples,
    })
}

/// `log det(1 + B_N(x) B_N(x)*)` from `x_1..x_N`.
pub fn log_det_from_coeffs(x: &[Complex64]) -> f64 {
    let n = x.len();
    let mut c = vec![Complex64::new(0.0, 0.0)];
    c.extend_from_slice(x);
    let h = hankel_classical(&PowerSeries::new(c), n);
    h.matrix.log_det_one_plus_gram()
}

/// Importance-sampling estimate of `Z(p, N) = ∫ det(1 + B_N B_N*)^{-p} dm`.
pub fn partition_mc(p: f64, n: usize, nsamples: usize, rng: &mut RngStream) -> Result<McEstimate> {
    let crit = critical_exponent(n);
    if p <= crit + 0.1 {
        return Err(Error::InvalidParameter(format!(
            "Monte Carlo needs p > p_N + 0.1 = {}",
            crit + 0.1
        )));
    }
    importance_integral(|x| -p * log_det_from_coeffs(x), &TProposal::for_hankel(n), nsamples, rng)
}

/// Importance-sampling estimate of `∫ det(1 + B B*)^{-p} dm(F_0..F_{N-1})`
/// for the generalized Hankel operator `B(m, n; F)` truncated to
/// `N x N`. No closed form is known; used to probe integrability.
pub fn partition_mc_generalized(
    m: f64,
    n: f64,
    p: f64,
    trunc: usize,
    nsamples: usize,
    rng: &mut RngStream,
) -> Result<McEstimate> {
    let proposal = TProposal::new((0..trunc).map(|k| 1.2 / (k as f64 + 1.0).sqrt()).collect());
    importance_integral(
        |f| {
            let b = hankel_generalized(&PowerSeries::new(f.to_vec()), &m, &n, trunc, trunc)
                .expect("positive degrees");
            -p * b.matrix.log_det_one_plus_gram()
        },
        &proposal,
        nsamples,
        rng,
    )
}

/// `det(1 + B_N(x) B_N(x)*)` from the coefficient list `x_1..x_N`.
pub fn det_from_coeffs(x: &[Complex64]) -> f64 {
    let mut c = vec![Complex64::new(0.0, 0.0)];
    c.extend_from_slice(x);
    det_invariant(&hankel_classical(&PowerSeries::new(c), x.len()).matrix)
}

/// The `N x N` Hankel matrix from `x_1..x_N`.
pub fn hankel_from_coeffs(x: &[Complex64]) -> Mat<f64> {
    let mut c = vec![Complex64::new(0.0, 0.0)];
    c.extend_from_slice(x);
    hankel_classical(&PowerSeries::new(c), x.len()).matrix
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_closed_forms() {
        let p = 2.7;
        assert!((partition_closed_form(p, 1).unwrap() - PI / (p - 1.0)).abs() < 1e-15);
        let z2 = PI * PI / ((p - 1.0) * (2.0 * p - 3.0));
        assert!((partition_closed_form(p, 2).unwrap() - z2).abs() < 1e-14);
        assert!(partition_closed_form(1.5, 2).is_err());
    }

    #[test]
    fn theorem_normalizer_matches_exponent_three_plus_l() {
        let (n, l) = (4, 0.3);
        let z = partition_closed_form(3.0 + l, n).unwrap();
        assert!((theorem_normalizer(n, l) * z - 1.0).abs() < 1e-13);
    }
}
