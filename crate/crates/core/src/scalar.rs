//! Real scalar abstraction shared by the floating and exact-rational code paths.
//!
//! Every series, matrix and combinatorial routine in the crate is written over
//! `Complex<R>` for some `R: Real`. Floating point (`f32`, `f64`) and exact
//! rationals (`BigRational`) both implement the trait; the transcendental hooks
//! return `None` where an exact answer does not exist.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, Num, One, Signed, ToPrimitive, Zero};

/// Real field used as the component type of complex coefficients.
pub trait Real:
    Clone + Debug + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// `num / den` in this field.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// `true` for exact arithmetic (coefficients compare with `==`).
    fn is_exact() -> bool;

    /// Complex exponential, when representable.
    fn exp_complex(z: &Complex<Self>) -> Option<Complex<Self>>;

    fn sqrt_opt(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
}

macro_rules! impl_real_float {
    ($t:ty) => {
        impl Real for $t {
            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn is_exact() -> bool {
                false
            }

            fn exp_complex(z: &Complex<Self>) -> Option<Complex<Self>> {
                Some(z.exp())
            }

            fn sqrt_opt(&self) -> Option<Self> {
                if *self < 0.0 {
                    None
                } else {
                    Some(Float::sqrt(*self))
                }
            }
        }
    };
}

impl_real_float!(f32);
impl_real_float!(f64);

impl Real for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_exact() -> bool {
        true
    }

    fn exp_complex(z: &Complex<Self>) -> Option<Complex<Self>> {
        if z.is_zero() {
            Some(Complex::one())
        } else {
            None
        }
    }

    fn sqrt_opt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.numer().sqrt();
        let den = self.denom().sqrt();
        if &(&num * &num) == self.numer() && &(&den * &den) == self.denom() {
            Some(BigRational::new(num, den))
        } else {
            None
        }
    }
}

/// Shorthand for a complex number over `R`.
pub fn cplx<R: Real>(re: R, im: R) -> Complex<R> {
    Complex::new(re, im)
}

/// Complex number with real part `n/d`.
pub fn cratio<R: Real>(n: i64, d: i64) -> Complex<R> {
    Complex::new(R::from_ratio(n, d), R::zero())
}

pub fn cint<R: Real>(n: i64) -> Complex<R> {
    cratio(n, 1)
}

/// `|z|^2` as an element of `R`.
pub fn norm_sqr<R: Real>(z: &Complex<R>) -> R {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

pub fn conj<R: Real>(z: &Complex<R>) -> Complex<R> {
    Complex::new(z.re.clone(), -z.im.clone())
}

/// Lossy conversion of an exact complex value to `Complex<f64>`.
pub fn to_c64<R: Real>(z: &Complex<R>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

/// Exact rational complex from a pair of integer ratios.
pub fn qc(re: (i64, i64), im: (i64, i64)) -> Complex<BigRational> {
    Complex::new(
        BigRational::from_ratio(re.0, re.1),
        BigRational::from_ratio(im.0, im.1),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_only_for_squares() {
        assert_eq!(
            BigRational::from_ratio(9, 4).sqrt_opt(),
            Some(BigRational::from_ratio(3, 2))
        );
        assert_eq!(BigRational::from_ratio(2, 1).sqrt_opt(), None);
    }

    #[test]
    fn exact_exp_only_at_zero() {
        assert!(BigRational::exp_complex(&Complex::zero()).is_some());
        assert!(BigRational::exp_complex(&qc((1, 1), (0, 1))).is_none());
    }
}
