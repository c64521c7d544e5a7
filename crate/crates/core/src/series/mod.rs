//! Truncated power series with scalar and matrix coefficients.

mod matrix;
mod power;

pub use matrix::MatrixSeries;
pub use power::PowerSeries;
