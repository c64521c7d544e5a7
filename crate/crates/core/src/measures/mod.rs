//! Gaussian measures, the mixtures `μ_l`, measure combinators, Fourier
//! transforms and point configurations.

mod combine;
mod config;
mod fourier;
mod gaussian;
mod mixture;

pub use combine::{combine_sample, quotient_onepoint_stat, MeasureSpec, QUOTIENT_RETRIES};
pub use config::{growth_envelope, poisson_sample, radial_growth, zeros, Configuration};
pub use fourier::{ft_closed_form, ft_estimate};
pub use gaussian::{gaussian_npoint_density, sample_gaussian, Degree, GaussianSpec};
pub use mixture::{
    clt_ks_distance, mu_l_density, mu_l_density_by_quadrature, mu_l_fourier, mu_l_norm_cdf, mu_l_re_f0_cf,
    re_f0, sample_mu_l,
};
