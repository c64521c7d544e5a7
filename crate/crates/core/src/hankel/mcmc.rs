//! Adaptive random-walk Metropolis for the determinantal measures.
//!
//! The targets decay polynomially, so a random walk in the `x` coordinates
//! mixes poorly in the tails. Each complex coordinate is therefore written as
//! `x = y sinh|y| / |y|`; in `y` the target picks up the Jacobian
//! `sinh|y| cosh|y| / |y|` and has exponential tails.

use num_complex::Complex64;
use rand_distr::StandardNormal;
use rand::Rng;

use super::density::DetMeasureSpec;
use crate::error::{Error, Result};
use crate::rng::RngStream;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McmcConfig {
    pub burn_in: usize,
    /// Full sweeps (one update per coordinate) between retained samples.
    pub thin: usize,
    pub samples: usize,
    pub target_acceptance: f64,
}

impl Default for McmcConfig {
    fn default() -> Self {
        McmcConfig {
            burn_in: 5_000,
            thin: 10,
            samples: 10_000,
            target_acceptance: 0.3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct McmcChain {
    /// Retained states, each `x_1..x_N`.
    pub samples: Vec<Vec<Complex64>>,
    /// Acceptance rate after burn-in, over all coordinates.
    pub acceptance: f64,
    /// Frozen per-coordinate proposal scales.
    pub scales: Vec<f64>,
}

fn to_x(y: Complex64) -> Complex64 {
    let r = y.norm();
    if r < 1e-8 {
        y
    } else {
        y * (r.sinh() / r)
    }
}

/// `log(sinh r cosh r / r)`, stable for small and large `r`.
fn log_jacobian(y: Complex64) -> f64 {
    let r = y.norm();
    if r < 1e-4 {
        return r * r * (2.0 / 3.0);
    }
    // sinh r cosh r = sinh(2r)/2
    let two_r = 2.0 * r;
    let log_sinh_2r = if two_r > 20.0 {
        two_r - std::f64::consts::LN_2
    } else {
        two_r.sinh().ln()
    };
    log_sinh_2r - std::f64::consts::LN_2 - r.ln()
}

/// Componentwise random-walk Metropolis chain targeting an arbitrary log
/// density in the `x` coordinates, run in the transformed `y` coordinates.
pub fn mcmc_sample(
    log_target: impl Fn(&[Complex64]) -> f64,
    dim: usize,
    config: &McmcConfig,
    rng: &mut RngStream,
) -> Result<McmcChain> {
    let mut y = vec![Complex64::new(0.0, 0.0); dim];
    let mut x: Vec<Complex64> = y.iter().map(|&v| to_x(v)).collect();
    let log_post = |x: &[Complex64], y: &[Complex64]| {
        log_target(x) + y.iter().map(|&v| log_jacobian(v)).sum::<f64>()
    };
    let mut current = log_post(&x, &y);
    let mut log_scale = vec![0.0f64; dim];
    let mut accepted = 0usize;
    let mut proposed = 0usize;
    let mut samples = Vec::with_capacity(config.samples);
    let total_sweeps = config.burn_in + config.samples * config.thin;

    for sweep in 0..total_sweeps {
        let adapting = sweep < config.burn_in;
        for k in 0..dim {
            let step = log_scale[k].exp();
            let dy = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)) * step;
            let old_y = y[k];
            let old_x = x[k];
            y[k] = old_y + dy;
            x[k] = to_x(y[k]);
            let cand = log_post(&x, &y);
            let log_alpha = (cand - current).min(0.0);
            let accept = rng.random::<f64>().ln() < log_alpha;
            if accept {
                current = cand;
            } else {
                y[k] = old_y;
                x[k] = old_x;
            }
            if adapting {
                // Robbins-Monro on the log scale
                let gain = 1.0 / ((sweep + 1) as f64).powf(0.6);
                log_scale[k] += gain * (log_alpha.exp() - config.target_acceptance);
            } else {
                proposed += 1;
                accepted += accept as usize;
            }
        }
        if !adapting && (sweep - config.burn_in + 1) % config.thin == 0 {
            samples.push(x.clone());
        }
    }

    let acceptance = if proposed == 0 {
        0.0
    } else {
        accepted as f64 / proposed as f64
    };
    if !(0.05..=0.8).contains(&acceptance) {
        return Err(Error::Mistuned(acceptance));
    }
    Ok(McmcChain {
        samples,
        acceptance,
        scales: log_scale.iter().map(|s| s.exp()).collect(),
    })
}

/// Chain targeting the determinantal measure of `spec`.
pub fn mcmc_sample_det(
    spec: &DetMeasureSpec,
    config: &McmcConfig,
    rng: &mut RngStream,
) -> Result<McmcChain> {
    mcmc_sample(|x| spec.log_unnormalized(x), spec.n, config, rng)
}
