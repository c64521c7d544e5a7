//! Conformally invariant measures on holomorphic differentials of the disk.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: truncated power series over `Complex<R>` and over matrices.
//! * [`invariant`]: the invariant norm, reproducing kernels, the covering
//!   group of `SU(1,1)` and its action on `m`-differentials.
//! * [`measures`]: Gaussian and mixture samplers, combinators, Fourier
//!   transforms, point configurations.
//! * [`hankel`]: Hankel operators, `det(1 + BB*)`, partition functions and
//!   samplers for the determinantal measures.
//! * [`loop_w`]: multi-index combinatorics and the loop-group `W` operator.
//! * [`schwarzian`]: pre-Schwarzian and Schwarzian series maps.
//! * [`rep_chars`]: partition counts and character multiplicities.
//!
//! Numerical code is generic over [`Real`]; `f64` is the working type and
//! `BigRational` gives exact arithmetic for the combinatorial identities.

pub mod error;
pub mod hankel;
pub mod invariant;
pub mod linalg;
pub mod loop_w;
pub mod measures;
pub mod rep_chars;
pub mod rng;
pub mod scalar;
pub mod schwarzian;
pub mod series;
pub mod stats;

pub use error::{Error, Result};
pub use linalg::Mat;
pub use rng::RngStream;
pub use scalar::Real;
pub use series::{MatrixSeries, PowerSeries};

use num_rational::BigRational;

pub type Series = PowerSeries<f64>;
pub type ExactSeries = PowerSeries<BigRational>;
pub type Matrix = Mat<f64>;
pub type ExactMatrix = Mat<BigRational>;
pub type MatSeries = MatrixSeries<f64>;
pub type ExactMatSeries = MatrixSeries<BigRational>;
