use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("divisor has zero constant term")]
    ZeroConstantTerm,

    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,

    #[error("series reversion needs a nonzero linear coefficient")]
    ZeroLinearTerm,

    #[error("logarithm and real powers need constant term exactly 1")]
    ConstantTermNotOne,

    #[error("value not representable in exact arithmetic: {0}")]
    NotRepresentable(&'static str),

    #[error("singular matrix")]
    Singular,

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(f64, f64),

    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("point outside the open unit disk (|z| = {0})")]
    OutsideDisk(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integral diverges: exponent {p} must exceed critical exponent {critical}")]
    Divergent { p: f64, critical: f64 },

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("coincident points")]
    CoincidentPoints,

    #[error("denominator constant term vanished in {0} consecutive draws")]
    DegenerateDenominator(usize),

    #[error("effective sample size {0:.1} is below 100")]
    LowEffectiveSampleSize(f64),

    #[error("MCMC acceptance rate {0:.3} outside [0.05, 0.8] after adaptation")]
    Mistuned(f64),

    #[error("unsupported measure: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
