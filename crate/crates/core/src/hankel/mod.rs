//! Hankel operators, the invariant `det(1 + BB*)`, exact partition functions
//! and samplers for the determinantal measures.

mod density;
mod matrices;
mod mcmc;
mod partition;
mod spectral;

pub use density::{cdf_abs_x1_n2, det_density, radial_density, tail_n1, DetMeasureSpec};
pub use matrices::{
    det_invariant, det_invariant_exact, det_invariant_n2, hankel_classical, hankel_generalized,
    linearized_schwarzian_matrix, log_det_invariant, OperatorKind, OperatorMatrix,
};
pub use mcmc::{mcmc_sample, mcmc_sample_det, McmcChain, McmcConfig};
pub use partition::{
    critical_exponent, det_from_coeffs, hankel_from_coeffs, importance_integral,
    log_det_from_coeffs, partition_closed_form, partition_gamma_form, partition_mc,
    partition_mc_generalized, partition_recursion_factor, theorem_normalizer, McEstimate,
    TProposal,
};
pub use spectral::{
    jacobian_u_s, jacobian_u_s_numeric, singular_values, singular_values_n2, u_from_s,
    SingularValues,
};
